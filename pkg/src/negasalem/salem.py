"""Salem-type functions driven by an index sequence over nega-q-ary digits.

The function maps x = sum d_k/(-q)^k to a series whose k-th term reads the
digit at position n_k, with coefficients beta/p flipped to the mirrored digit
at odd positions.  Evaluation truncates the series with a certified error
bound; the module adds continuity and jump analysis at branch points, digit
increments, set bounds, monotonicity probes, the distribution function with
its sampler, and the two integral routes.
"""

from __future__ import annotations

import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

import numpy as np

from .indexseq import IndexSequence
from .numeration import (
    DigitSeq,
    Interval,
    LazyDigits,
    NumerationSystem,
    alternate_representation,
    branch_position,
    check_digits,
    value_of,
)
from .operators import apply_plan

Q = Fraction

_MAX_TERMS = 200_000


class NotApplicableError(ValueError):
    """The requested analysis is undefined for this point / index sequence."""


class NotADistributionError(ValueError):
    """Weights with a negative entry cannot define a distribution."""


@dataclass(frozen=True)
class SalemParams:
    """Weight tuple (p_0, ..., p_{q-1}) with its cumulative sums.

    Each p_i lies in (-1, 1), the p_i sum to 1 exactly, and every partial sum
    beta_i = p_0 + ... + p_{i-1} with i >= 1 lies strictly between 0 and 1.
    """

    q: int
    p: tuple[Fraction, ...]
    beta: tuple[Fraction, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"base magnitude q must be >= 2, got {self.q}")
        p = tuple(Q(v) for v in self.p)
        if len(p) != self.q:
            raise ValueError(f"need exactly q={self.q} weights, got {len(p)}")
        for i, v in enumerate(p):
            if not (-1 < v < 1):
                raise ValueError(f"weight p_{i}={v} outside the open interval (-1, 1)")
        if sum(p) != 1:
            raise ValueError(f"weights must sum to 1 exactly, got {sum(p)}")
        beta = tuple(sum(p[:i], Q(0)) for i in range(self.q))
        for i in range(1, self.q):
            if not (0 < beta[i] < 1):
                raise ValueError(
                    f"cumulative weight beta_{i}={beta[i]} outside the open interval (0, 1)"
                )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "_pf", tuple(float(v) for v in p))
        object.__setattr__(self, "_bf", tuple(float(v) for v in beta))

    @property
    def system(self) -> NumerationSystem:
        return NumerationSystem(self.q)

    def mirror(self, digit: int) -> int:
        return self.q - 1 - digit

    def twist_digit(self, digit: int, position: int) -> int:
        """Image digit: unchanged at even positions, mirrored at odd ones."""
        return digit if position % 2 == 0 else self.mirror(digit)

    def beta_at(self, digit: int, position: int) -> Fraction:
        return self.beta[self.twist_digit(digit, position)]

    def p_at(self, digit: int, position: int) -> Fraction:
        return self.p[self.twist_digit(digit, position)]

    def beta_float(self, digit: int, position: int) -> float:
        return self._bf[self.twist_digit(digit, position)]

    def p_float(self, digit: int, position: int) -> float:
        return self._pf[self.twist_digit(digit, position)]

    @property
    def max_abs_p(self) -> float:
        return max(abs(v) for v in self._pf)

    @property
    def max_abs_beta(self) -> float:
        return max(abs(v) for v in self._bf)

    @property
    def tail_bound(self) -> float:
        """B with |remaining series| <= B * |product so far|."""
        return self.max_abs_beta / (1.0 - self.max_abs_p) + self.max_abs_beta

    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.p)


@dataclass(frozen=True)
class BoundedValue:
    """A real evaluation together with a certified truncation bound."""

    value: float
    err: float

    def __post_init__(self) -> None:
        if self.err < 0:
            raise ValueError(f"error bound must be >= 0, got {self.err}")


def _series(
    params: SalemParams,
    s: IndexSequence,
    digit_of: Callable[[int], int],
    tol: float,
    start: int = 1,
    position_map: Optional[Callable[[int], int]] = None,
) -> tuple[float, float]:
    """Truncated series sum from term `start`, stopping once the certified
    remainder bound B * |prod| drops below tol.

    `digit_of` is queried at the current position of each read; parities
    always come from the original position n_k.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be > 0, got {tol}")
    B = params.tail_bound
    total = 0.0
    prod = 1.0
    k = start
    while True:
        n = s.value_at(k)
        pos = position_map(n) if position_map is not None else n
        d = digit_of(pos)
        total += params.beta_float(d, n) * prod
        prod *= params.p_float(d, n)
        if B * abs(prod) < tol:
            return total, B * abs(prod)
        k += 1
        if k - start > _MAX_TERMS:  # pragma: no cover - products shrink geometrically
            raise RuntimeError("series did not meet the tolerance within the term cap")


def evaluate(params: SalemParams, s: IndexSequence, x: DigitSeq, tol: float = 1e-10) -> BoundedValue:
    """Value of the function at a digit sequence, within tol."""
    check_digits(x, params.system)
    value, err = _series(params, s, x.digit_at, tol)
    return BoundedValue(value, err)


def evaluate_at(params: SalemParams, s: IndexSequence, x: Fraction, tol: float = 1e-10) -> BoundedValue:
    """Value at a rational point, extracting digits lazily as the series needs them."""
    lazy = LazyDigits(Q(x), params.system)
    value, err = _series(params, s, lazy.digit_at, tol)
    return BoundedValue(value, err)


def _stage_value(
    params: SalemParams,
    s: IndexSequence,
    x: DigitSeq,
    stage: int,
    tol: float,
) -> float:
    """Remainder of the series after its first `stage` terms, read through the
    digit sequence with those stage positions deleted.

    The digits are fetched from the shifted sequence at their induced current
    positions, so this exercises the deletion bookkeeping end to end, while
    the coefficients keep the parities of the original positions.
    """
    if stage == 0:
        shifted = x
        position_map = None
    else:
        plan = s.initial_plan(stage)
        shifted = apply_plan(x, plan)
        front = sorted(plan.targets)
        position_map = lambda n: n - bisect_left(front, n)
    value, _ = _series(params, s, shifted.digit_at, tol, start=stage + 1, position_map=position_map)
    return value


def equation_residual(
    params: SalemParams,
    s: IndexSequence,
    x: DigitSeq,
    k: int,
    tol: float = 1e-10,
) -> float:
    """|LHS - RHS| of the k-th recursion step linking consecutive shifted stages.

    Stage k-1 of the series equals the k-th coefficient pair plus the
    k-th weight times stage k; both stages are evaluated through the
    digit sequences with the corresponding reads deleted.
    """
    if k < 1:
        raise ValueError(f"equation index must be >= 1, got {k}")
    check_digits(x, params.system)
    lhs = _stage_value(params, s, x, k - 1, tol)
    n_k = s.value_at(k)
    d = x.digit_at(n_k)
    rhs = params.beta_float(d, n_k) + params.p_float(d, n_k) * _stage_value(params, s, x, k, tol)
    return abs(lhs - rhs)


def image_digits(params: SalemParams, s: IndexSequence, x: DigitSeq, count: int) -> tuple[int, ...]:
    """First `count` image digits: reads at n_1, n_2, ... mirrored at odd positions.

    Re-summing the plain series over these digits reproduces evaluate()."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    check_digits(x, params.system)
    out = []
    for t in range(1, count + 1):
        n = s.value_at(t)
        out.append(params.twist_digit(x.digit_at(n), n))
    return tuple(out)


@dataclass(frozen=True)
class OneSidedLimits:
    """One-sided limits of the function at a branch point."""

    left: BoundedValue
    right: BoundedValue
    jump: float
    position: int


def one_sided_limits(
    params: SalemParams,
    s: IndexSequence,
    x0: DigitSeq,
    tol: float = 1e-10,
) -> OneSidedLimits:
    """Evaluate both representations of a branch point and orient them.

    The two representations are the extreme tail completions of adjacent
    rank-m cylinders, so the cylinder parity rule decides which value is the
    limit from the left: the alternating tail starting with q-1 belongs to
    the left side when m is odd and to the right side when m is even.
    """
    sys = params.system
    other = alternate_representation(x0, sys)
    if other is None:
        raise NotApplicableError(
            "point has a unique representation; one-sided limits coincide with the value"
        )
    m = branch_position(x0, sys)
    assert m is not None
    if not s.covers(m):
        raise NotApplicableError(
            f"index sequence never reads some position in 1..{m}; "
            "the branch analysis is undefined"
        )
    if x0.period[0] == sys.q - 1:
        high_tail, low_tail = x0, other
    else:
        high_tail, low_tail = other, x0
    v_high = evaluate(params, s, high_tail, tol)
    v_low = evaluate(params, s, low_tail, tol)
    if m % 2 == 1:
        left, right = v_high, v_low
    else:
        left, right = v_low, v_high
    return OneSidedLimits(left, right, abs(v_high.value - v_low.value), m)


KIND_IRRATIONAL = "irrational-continuous"
KIND_CONTINUOUS = "continuous"
KIND_JUMP = "jump"


@dataclass(frozen=True)
class ContinuityReport:
    kind: str
    jump: float = 0.0
    limits: Optional[OneSidedLimits] = None


def classify_continuity(
    params: SalemParams,
    s: IndexSequence,
    x0: DigitSeq,
    tol: float = 1e-10,
) -> ContinuityReport:
    """Classify a point as continuous, jump, or unique-representation continuous."""
    sys = params.system
    if branch_position(x0, sys) is None:
        return ContinuityReport(KIND_IRRATIONAL)
    limits = one_sided_limits(params, s, x0, tol)
    if limits.jump <= 2 * tol:
        return ContinuityReport(KIND_CONTINUOUS, limits.jump, limits)
    return ContinuityReport(KIND_JUMP, limits.jump, limits)


def increment(
    params: SalemParams,
    s: IndexSequence,
    constraints: Sequence[tuple[int, int]],
) -> Fraction:
    """Product of parity-twisted weights over digit constraints (position, digit).

    This is the exact increment of the function across the set of numbers
    carrying those digits at those positions.
    """
    positions = [n for n, _ in constraints]
    if len(set(positions)) != len(positions):
        raise ValueError(f"constraint positions must be distinct, got {positions}")
    out = Q(1)
    for n, c in constraints:
        if n < 1:
            raise ValueError(f"positions must be >= 1, got {n}")
        if s.position_of(n) is None:
            raise ValueError(f"position {n} is never read by the index sequence")
        params.system.check_digit(c)
        out *= params.p_at(c, n)
    return out


def set_bounds(sys: NumerationSystem, constraints: Sequence[tuple[int, int]]) -> Interval:
    """Exact inf/sup of the set of numbers with fixed digits at fixed positions.

    Free digits are optimized one position at a time: the minimum takes q-1 at
    odd free positions and 0 at even ones (the maximum the reverse), because
    (-q)^(-n) alternates in sign.  The resulting width always equals
    1 - sum (q-1)/q^{n_j}, which is asserted.
    """
    positions = [n for n, _ in constraints]
    if len(set(positions)) != len(positions):
        raise ValueError(f"constraint positions must be distinct, got {positions}")
    lo = sys.dom_inf
    hi = sys.dom_sup
    for n, c in constraints:
        if n < 1:
            raise ValueError(f"positions must be >= 1, got {n}")
        sys.check_digit(c)
        min_pattern = sys.q - 1 if n % 2 == 1 else 0
        max_pattern = 0 if n % 2 == 1 else sys.q - 1
        lo += (Q(c) - min_pattern) * Q(-sys.q) ** (-n)
        hi += (Q(c) - max_pattern) * Q(-sys.q) ** (-n)
    width_formula = 1 - sum((Q(sys.q - 1, sys.q**n) for n, _ in constraints), Q(0))
    assert hi - lo == width_formula, (hi - lo, width_formula)
    return Interval(lo, hi)


@dataclass(frozen=True)
class PairWitness:
    """Two points in x-order whose function values are certifiably inverted."""

    x_lo: Fraction
    x_hi: Fraction
    value_lo: BoundedValue
    value_hi: BoundedValue


@dataclass(frozen=True)
class CylinderScan:
    prefix: tuple[int, ...]
    witness: Optional[PairWitness]


@dataclass(frozen=True)
class MonotonicityReport:
    increasing_violations: int
    witness_pairs: tuple[PairWitness, ...]
    cylinder_scan: tuple[CylinderScan, ...]


def _certified_inversion(
    points: list[tuple[Fraction, BoundedValue]],
) -> Optional[PairWitness]:
    """First pair x_lo < x_hi with value(x_lo) > value(x_hi) beyond both bounds.

    Tracking the prefix point with the largest certified lower bound
    value - err finds a witness whenever any pair is certifiably inverted.
    """
    points = sorted(points, key=lambda t: t[0])
    best: Optional[tuple[Fraction, BoundedValue]] = None
    for x, bv in points:
        if best is not None:
            bx, bbv = best
            if bbv.value - bbv.err > bv.value + bv.err:
                return PairWitness(bx, x, bbv, bv)
        if best is None or bv.value - bv.err > best[1].value - best[1].err:
            best = (x, bv)
    return None


def monotonicity_report(
    params: SalemParams,
    s: IndexSequence,
    grid_size: int,
    tol: float = 1e-10,
    scan_rank: int = 0,
    scan_depth: int = 6,
) -> MonotonicityReport:
    """Order-violation count over a sorted grid plus a per-cylinder witness scan.

    A violation is only counted when it is certified: the drop must exceed the
    sum of the two error bounds.  When scan_rank >= 1, every cylinder of rank
    up to scan_rank is searched for an inverted pair among the zero-tail
    representatives scan_depth digits deeper.
    """
    if grid_size < 2:
        raise ValueError(f"grid size must be >= 2, got {grid_size}")
    sys = params.system
    step = (sys.dom_sup - sys.dom_inf) / (grid_size - 1)
    grid: list[tuple[Fraction, BoundedValue]] = []
    for i in range(grid_size):
        x = sys.dom_inf + i * step
        grid.append((x, evaluate_at(params, s, x, tol)))
    violations = 0
    witnesses: list[PairWitness] = []
    for (x1, b1), (x2, b2) in zip(grid, grid[1:]):
        if b1.value - b2.value > b1.err + b2.err:
            violations += 1
            if len(witnesses) < 32:
                witnesses.append(PairWitness(x1, x2, b1, b2))
    scans: list[CylinderScan] = []
    for rank in range(1, scan_rank + 1):
        for prefix in product(range(sys.q), repeat=rank):
            points = []
            for ext in product(range(sys.q), repeat=scan_depth):
                seq = DigitSeq(prefix + ext, (0,))
                points.append((value_of(seq, sys), evaluate(params, s, seq, tol)))
            scans.append(CylinderScan(prefix, _certified_inversion(points)))
    return MonotonicityReport(violations, tuple(witnesses), tuple(scans))


def cdf(params: SalemParams, s: IndexSequence, x: Fraction, tol: float = 1e-10) -> BoundedValue:
    """Distribution function of the sampled digit series, evaluated at x.

    Zero below the domain, one at or above its supremum, and the series over
    the (lazily extracted) digits of x in between.
    """
    if not params.nonnegative():
        raise NotADistributionError(f"weights {params.p} contain a negative entry")
    x = Q(x)
    sys = params.system
    if x < sys.dom_inf:
        return BoundedValue(0.0, 0.0)
    if x >= sys.dom_sup:
        return BoundedValue(1.0, 0.0)
    return evaluate_at(params, s, x, tol)


def sample_digit_values(
    q: int,
    probs: Sequence[Fraction],
    seed: int,
    count: int,
    depth: int = 64,
    with_digits: bool = False,
):
    """Draw digit streams i.i.d. with the given weights, mirror the digits at
    odd positions, and evaluate the resulting nega-q number to `depth` digits.

    Deterministic for a fixed seed.  Returns the values, plus the transformed
    digit tuples when with_digits is set.
    """
    probs = [Q(v) for v in probs]
    if len(probs) != q:
        raise ValueError(f"need exactly q={q} weights, got {len(probs)}")
    if any(v < 0 for v in probs):
        raise NotADistributionError(f"weights {probs} contain a negative entry")
    if sum(probs) != 1:
        raise ValueError(f"weights must sum to 1 exactly, got {sum(probs)}")
    if depth < 1 or count < 0:
        raise ValueError("depth must be >= 1 and count >= 0")
    cum = []
    acc = 0.0
    for v in probs:
        acc += float(v)
        cum.append(acc)
    rng = random.Random(seed)
    base = -1.0 / q
    values: list[float] = []
    streams: list[tuple[int, ...]] = []
    for _ in range(count):
        acc_v = 0.0
        power = 1.0
        digits: list[int] = []
        for pos in range(1, depth + 1):
            u = rng.random()
            raw = min(bisect_right(cum, u), q - 1)
            d = raw if pos % 2 == 0 else q - 1 - raw
            power *= base
            acc_v += d * power
            if with_digits:
                digits.append(d)
        values.append(acc_v)
        if with_digits:
            streams.append(tuple(digits))
    if with_digits:
        return values, streams
    return values


def sample_values(
    params: SalemParams,
    s: IndexSequence,
    seed: int,
    count: int,
    depth: int = 64,
) -> list[float]:
    """Seeded sampler for the random series value.

    The construction draws each position independently, so the index sequence
    does not enter the sampling itself; it is kept in the signature because
    the matching distribution function is indexed by it.
    """
    del s
    return sample_digit_values(params.q, params.p, seed, count, depth)


def integral_closed_form(params: SalemParams) -> Fraction:
    """Closed-form integral value (1/(q+1)) * sum of the cumulative weights.

    The mirrored cumulative sums are a permutation of the plain ones, which is
    asserted rather than assumed.
    """
    plain = sum(params.beta, Q(0))
    mirrored = sum((params.beta_at(i, 1) for i in range(params.q)), Q(0))
    assert plain == mirrored
    return Q(1, params.q + 1) * plain


def _zero_tail_values(params: SalemParams) -> tuple[float, float]:
    """Series tails over an all-zero digit stream, keyed by starting parity.

    An all-zero tail contributes beta_{q-1} at odd positions and 0 at even
    ones, so the two tails solve a 2x2 linear recursion exactly.
    """
    b_top = params._bf[params.q - 1]
    p_top = params._pf[params.q - 1]
    p_zero = params._pf[0]
    t_odd = b_top / (1.0 - p_zero * p_top)
    t_even = p_zero * t_odd
    return t_odd, t_even


def integral_riemann(
    params: SalemParams,
    s: IndexSequence,
    rank: int,
    tol: float = 1e-10,
) -> float:
    """Riemann sum over all rank-`rank` cylinders with zero-tail representatives.

    Cylinders at a fixed rank share the exact width q^(-rank), so the sum is
    the mean of the representative values.  Terms reading beyond the rank see
    only zero digits, and that remaining tail is added in closed form, making
    each representative value exact up to float rounding (well inside tol).
    """
    del tol
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if rank > 14 or params.q**rank > 5_000_000:
        raise ValueError(f"rank {rank} at q={params.q} exceeds the desk-scale guard")
    q = params.q
    n_cells = q**rank
    idx = np.arange(n_cells, dtype=np.int64)
    digits = ((idx[:, None] // (q ** np.arange(rank - 1, -1, -1, dtype=np.int64))) % q).astype(
        np.int16
    )
    beta_even = np.array(params._bf, dtype=np.float64)
    p_even = np.array(params._pf, dtype=np.float64)
    beta_odd = beta_even[::-1].copy()
    p_odd = p_even[::-1].copy()

    totals = np.zeros(n_cells, dtype=np.float64)
    prods = np.ones(n_cells, dtype=np.float64)
    k = 1
    while True:
        n = s.value_at(k)
        if k > s.prefix_len and n > rank:
            break
        b_tab, p_tab = (beta_even, p_even) if n % 2 == 0 else (beta_odd, p_odd)
        if n <= rank:
            col = digits[:, n - 1]
            totals += b_tab[col] * prods
            prods = prods * p_tab[col]
        else:
            totals += b_tab[0] * prods
            prods = prods * p_tab[0]
        k += 1
    t_odd, t_even = _zero_tail_values(params)
    tail = t_odd if s.value_at(k) % 2 == 1 else t_even
    totals += prods * tail
    return float(totals.mean())
