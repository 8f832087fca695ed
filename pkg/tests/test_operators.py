import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import delete_positions_oracle, random_seq
from negasalem import (
    DigitSeq,
    NumerationSystem,
    ShiftPlan,
    apply_plan,
    delete_digit,
    shift,
    value_of,
)

Q = Fraction

SYS2 = NumerationSystem(2)
SYS3 = NumerationSystem(3)


def reconstruction_holds(seq, sys, n):
    """x == head_n + (-q)^(-n) * value(shift^n x), checked exactly."""
    x = value_of(seq, sys)
    head = sum((Q(seq.digit_at(k)) / Q(-sys.q) ** k for k in range(1, n + 1)), Q(0))
    return x == head + Q(-sys.q) ** (-n) * value_of(shift(seq, n), sys)


class TestShift:
    def test_drops_first_digit(self):
        assert shift(DigitSeq((), (1, 0))) == DigitSeq((), (0, 1))
        assert value_of(DigitSeq((), (1, 0)), SYS2) == Q(-2, 3)
        assert value_of(shift(DigitSeq((), (1, 0))), SYS2) == Q(1, 3)

    def test_zero_is_fixed_point(self):
        assert shift(DigitSeq((), (0,))) == DigitSeq((), (0,))

    def test_preperiod_example_q3(self):
        assert shift(DigitSeq((2,), (1,))) == DigitSeq((), (1,))

    def test_affine_relation(self):
        rng = random.Random(31)
        for q in (2, 3, 5):
            sys = NumerationSystem(q)
            for _ in range(100):
                seq = random_seq(rng, q)
                x = value_of(seq, sys)
                assert value_of(shift(seq), sys) == -q * x - seq.digit_at(1)

    def test_zero_count_is_identity(self):
        rng = random.Random(37)
        for _ in range(20):
            seq = random_seq(rng, 3)
            assert shift(seq, 0) == seq

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            shift(DigitSeq((), (0,)), -1)

    def test_periodicity(self):
        assert shift(DigitSeq((), (1, 0)), 2) == DigitSeq((), (1, 0))

    def test_reconstruction_identity_randomized(self):
        rng = random.Random(41)
        for q in (2, 5):
            sys = NumerationSystem(q)
            for _ in range(40):
                seq = random_seq(rng, q)
                for n in (1, 3, 7, 13):
                    assert reconstruction_holds(seq, sys, n)


class TestDeleteDigit:
    def test_first_position_equals_shift(self):
        rng = random.Random(43)
        for _ in range(50):
            seq = random_seq(rng, 3)
            assert delete_digit(seq, 1) == shift(seq)

    def test_explicit_example(self):
        assert delete_digit(DigitSeq((1, 1, 0), (0,)), 2) == DigitSeq((1, 0), (0,))

    def test_constant_sequence_invariant(self):
        for q, d in ((2, 1), (3, 2)):
            seq = DigitSeq((), (d,))
            for m in (1, 2, 5, 9):
                assert delete_digit(seq, m) == seq

    def test_deletion_semantics_positionwise(self):
        rng = random.Random(47)
        for _ in range(80):
            seq = random_seq(rng, 3)
            m = rng.randint(1, 15)
            out = delete_digit(seq, m)
            for j in range(1, 30):
                expect = seq.digit_at(j) if j < m else seq.digit_at(j + 1)
                assert out.digit_at(j) == expect

    @given(
        pre=st.lists(st.integers(0, 2), max_size=6),
        per=st.lists(st.integers(0, 2), min_size=1, max_size=5),
        m=st.integers(1, 16),
    )
    @settings(max_examples=200, deadline=None)
    def test_affine_identity(self, pre, per, m):
        seq = DigitSeq(tuple(pre), tuple(per))
        q = 3
        sys = SYS3
        x = value_of(seq, sys)
        head = DigitSeq(tuple(seq.digit_at(k) for k in range(1, m + 1)), (0,))
        rhs = -q * x - Q(seq.digit_at(m)) / Q(-q) ** m + (q + 1) * value_of(head, sys)
        assert value_of(delete_digit(seq, m), sys) == rhs

    def test_bad_position_rejected(self):
        with pytest.raises(ValueError):
            delete_digit(DigitSeq((), (0,)), 0)


class TestRawCompositionTable:
    """Two chained deletions follow the three-case composition rule."""

    def test_all_small_pairs(self):
        rng = random.Random(53)
        for _ in range(3):
            seq = random_seq(rng, 3)
            for n1 in range(1, 11):
                for n2 in range(1, 11):
                    got = delete_digit(delete_digit(seq, n1), n2)
                    if n2 < n1:
                        dropped = {n1, n2}
                    elif n2 > n1:
                        dropped = {n1, n2 + 1}
                    else:
                        dropped = {n1, n1 + 1}
                    assert got == delete_positions_oracle(seq, dropped)

    def test_squared_deletion_example(self):
        # deleting position 5 twice drops original positions 5 and 6
        seq = DigitSeq((0, 1, 2, 0, 1, 2, 0, 1, 2), (1, 0))
        got = delete_digit(delete_digit(seq, 5), 5)
        assert got == delete_positions_oracle(seq, {5, 6})


class TestShiftPlan:
    def test_steps_for_quoted_prefix(self):
        plan = ShiftPlan((3, 7, 9, 5))
        assert plan.steps == (3, 6, 7, 4)

    def test_duplicate_positions_rejected(self):
        with pytest.raises(ValueError):
            ShiftPlan((5, 5))

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            ShiftPlan((0, 2))

    def test_empty_plan_is_identity(self):
        rng = random.Random(59)
        seq = random_seq(rng, 2)
        assert apply_plan(seq, ShiftPlan(())) == seq

    def test_plan_3_1_drops_both_originals(self):
        rng = random.Random(61)
        seq = random_seq(rng, 3)
        out = apply_plan(seq, ShiftPlan((3, 1)))
        assert out == delete_positions_oracle(seq, {1, 3})
        for j, orig in enumerate((2, 4, 5, 6, 7, 8), 1):
            assert out.digit_at(j) == seq.digit_at(orig)

    def test_plan_2_7_drops_both_originals(self):
        rng = random.Random(67)
        seq = random_seq(rng, 3)
        out = apply_plan(seq, ShiftPlan((2, 7)))
        assert out == delete_positions_oracle(seq, {2, 7})

    def test_plan_matches_one_pass_deletion_randomized(self):
        rng = random.Random(71)
        for _ in range(150):
            q = rng.choice((2, 3))
            seq = random_seq(rng, q)
            k = rng.randint(1, 8)
            targets = tuple(rng.sample(range(1, 13), k))
            assert apply_plan(seq, ShiftPlan(targets)) == delete_positions_oracle(
                seq, set(targets)
            )

    def test_induced_position(self):
        plan = ShiftPlan((3, 7, 9, 5))
        assert plan.induced_position(1) == 1
        assert plan.induced_position(4) == 3
        assert plan.induced_position(12) == 8
        with pytest.raises(ValueError):
            plan.induced_position(7)

    def test_value_identity_through_plan(self):
        # deleting a set of positions only removes those series terms, shifted
        rng = random.Random(73)
        for _ in range(30):
            seq = random_seq(rng, 2)
            targets = tuple(rng.sample(range(1, 10), 3))
            out = apply_plan(seq, ShiftPlan(targets))
            assert value_of(out, SYS2) == value_of(
                delete_positions_oracle(seq, set(targets)), SYS2
            )
