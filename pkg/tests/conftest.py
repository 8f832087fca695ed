"""Shared oracles and generators for the test suite.

Every oracle here is deliberately independent of the code path it checks:
partial sums instead of the closed-form tail, exhaustive prefix enumeration
instead of the alternate-representation rule, one-pass deletion instead of
chained single-digit deletions.
"""

from __future__ import annotations

import random
from fractions import Fraction

from negasalem import DigitSeq, NumerationSystem

Q = Fraction


def partial_sum(seq: DigitSeq, sys: NumerationSystem, terms: int) -> Fraction:
    """Plain truncated sum of the digit series, no closed form."""
    return sum((Q(seq.digit_at(k)) / Q(-sys.q) ** k for k in range(1, terms + 1)), Q(0))


def enumerate_representations(x: Fraction, sys: NumerationSystem, depth: int) -> list[list[int]]:
    """All digit prefixes of the given depth that can start a representation of x."""
    out: list[list[int]] = []

    def rec(r: Fraction, acc: list[int]) -> None:
        if len(acc) == depth:
            out.append(acc)
            return
        for d in range(sys.q):
            r2 = -sys.q * r - d
            if sys.dom_inf <= r2 <= sys.dom_sup:
                rec(r2, acc + [d])

    rec(Q(x), [])
    return out


def delete_positions_oracle(seq: DigitSeq, positions: set[int]) -> DigitSeq:
    """Remove a set of original positions from the stream in one pass."""
    P = len(seq.period)
    L = len(seq.preperiod)
    span = max([L] + list(positions)) + P
    kept = tuple(seq.digit_at(j) for j in range(1, span + 1) if j not in positions)
    rot = (span - L) % P
    return DigitSeq(kept, seq.period[rot:] + seq.period[:rot])


def random_seq(rng: random.Random, q: int, max_pre: int = 10, max_per: int = 8) -> DigitSeq:
    pre = tuple(rng.randrange(q) for _ in range(rng.randint(0, max_pre)))
    per = tuple(rng.randrange(q) for _ in range(rng.randint(1, max_per)))
    return DigitSeq(pre, per)


def random_rational_in_domain(rng: random.Random, sys: NumerationSystem, max_den: int = 300) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(0, den)
    return sys.dom_inf + Q(num, den) * (sys.dom_sup - sys.dom_inf)
