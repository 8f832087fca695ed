"""Exact numeration in a negative integer base.

A number x in [-q/(q+1), 1/(q+1)] is represented as the series
sum_k d_k / (-q)^k with digits d_k in {0, ..., q-1}.  Eventually periodic
digit sequences are stored as (preperiod, period) pairs and every value
computation is exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

Q = Fraction


class InvalidDigitError(ValueError):
    """A digit falls outside the alphabet {0, ..., q-1}."""


class DomainError(ValueError):
    """A number falls outside [-q/(q+1), 1/(q+1)]."""


@dataclass(frozen=True)
class NumerationSystem:
    """Radix -q with digit alphabet {0, ..., q-1}; q is the base magnitude."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"base magnitude q must be an integer >= 2, got {self.q!r}")

    @property
    def dom_inf(self) -> Fraction:
        return Q(-self.q, self.q + 1)

    @property
    def dom_sup(self) -> Fraction:
        return Q(1, self.q + 1)

    def contains(self, x: Fraction) -> bool:
        return self.dom_inf <= x <= self.dom_sup

    def check_digit(self, d: int) -> None:
        if not (0 <= d <= self.q - 1):
            raise InvalidDigitError(f"digit {d} outside alphabet 0..{self.q - 1}")


def _primitive(period: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest cycle whose repetition reproduces `period`."""
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


def _canonicalize(pre: tuple[int, ...], per: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    per = _primitive(per)
    pre_l = list(pre)
    per_l = list(per)
    # minimal preperiod: absorb trailing digits that already follow the cycle
    while pre_l and pre_l[-1] == per_l[-1]:
        pre_l.pop()
        per_l = [per_l[-1]] + per_l[:-1]
    return tuple(pre_l), tuple(per_l)


@dataclass(frozen=True)
class DigitSeq:
    """Eventually periodic digit sequence, held in canonical form.

    Canonical means the period is a primitive cycle and the preperiod is
    minimal (its last digit differs from the period's last digit).  A
    terminating expansion is stored with period (0,).
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        pre = tuple(int(d) for d in self.preperiod)
        per = tuple(int(d) for d in self.period)
        if not per:
            raise ValueError("period must be nonempty (use (0,) for a terminating expansion)")
        if any(d < 0 for d in pre + per):
            raise InvalidDigitError("digits must be nonnegative integers")
        pre, per = _canonicalize(pre, per)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def digit_at(self, n: int) -> int:
        """Digit at 1-indexed position n, in O(1)."""
        if n < 1:
            raise ValueError(f"positions are 1-indexed, got {n}")
        L = len(self.preperiod)
        if n <= L:
            return self.preperiod[n - 1]
        return self.period[(n - L - 1) % len(self.period)]

    def digits(self, count: int) -> tuple[int, ...]:
        return tuple(self.digit_at(n) for n in range(1, count + 1))

    def max_digit(self) -> int:
        return max(self.preperiod + self.period)

    def to_text(self) -> str:
        pre = ",".join(str(d) for d in self.preperiod)
        per = ",".join(str(d) for d in self.period)
        return f"{pre}:{per}"

    @classmethod
    def from_text(cls, text: str) -> "DigitSeq":
        if ":" not in text:
            raise ValueError(f"digit sequence must look like 'pre:period', got {text!r}")
        pre_s, per_s = text.split(":", 1)
        pre = tuple(int(t) for t in pre_s.split(",") if t != "")
        per = tuple(int(t) for t in per_s.split(",") if t != "")
        return cls(pre, per)

    def __str__(self) -> str:
        return self.to_text()


ZERO = DigitSeq((), (0,))


def check_digits(seq: DigitSeq, sys: NumerationSystem) -> None:
    if seq.max_digit() > sys.q - 1:
        raise InvalidDigitError(
            f"digit {seq.max_digit()} outside alphabet 0..{sys.q - 1}"
        )


def value_of(seq: DigitSeq, sys: NumerationSystem) -> Fraction:
    """Exact value sum_k d_k/(-q)^k of an eventually periodic sequence.

    The periodic tail t solves t = sum_j c_j/(-q)^j + (-q)^(-P) * t, which
    gives a closed form free of any limit process.
    """
    check_digits(seq, sys)
    base = Q(-sys.q)
    head = Q(0)
    for k, d in enumerate(seq.preperiod, 1):
        head += Q(d) / base**k
    P = len(seq.period)
    cycle = sum((Q(d) / base**j for j, d in enumerate(seq.period, 1)), Q(0))
    tail = cycle / (1 - base**(-P))
    x = head + base**(-len(seq.preperiod)) * tail
    assert sys.contains(x)
    return x


def _greedy_digit(r: Fraction, sys: NumerationSystem) -> int:
    """Unique (or tie-broken smaller) digit d with -q*r - d back in the domain.

    Admissible digits form a closed interval of length exactly one; a tie
    happens when its lower end -q*r - dom_sup is an integer, and then the
    smaller digit is chosen.
    """
    lo = -sys.q * r - sys.dom_sup
    if lo.denominator == 1:
        d = int(lo) if lo >= 0 else int(lo) + 1
    else:
        d = math.ceil(lo)
    if not (0 <= d <= sys.q - 1):  # pragma: no cover - guarded by domain checks
        raise DomainError(f"remainder {r} escaped the digit extraction invariant")
    return d


def digit_stream(x: Fraction, sys: NumerationSystem) -> Iterator[int]:
    """Lazy greedy digit extraction, without cycle detection."""
    x = Q(x)
    if not sys.contains(x):
        raise DomainError(f"{x} outside [{sys.dom_inf}, {sys.dom_sup}]")
    r = x
    while True:
        d = _greedy_digit(r, sys)
        yield d
        r = -sys.q * r - d


class LazyDigits:
    """Random-access view over digit_stream with memoization."""

    def __init__(self, x: Fraction, sys: NumerationSystem):
        self._it = digit_stream(x, sys)
        self._cache: list[int] = []

    def digit_at(self, n: int) -> int:
        while len(self._cache) < n:
            self._cache.append(next(self._it))
        return self._cache[n - 1]


def digits_of(x: Fraction, sys: NumerationSystem) -> DigitSeq:
    """Greedy digit extraction with cycle detection on the remainder state.

    Remainders of a rational input live in a finite set (denominators divide
    the input's), so the orbit must revisit a state; the first revisit splits
    the digits into the minimal (preperiod, period) pair.  Ties pick the
    smaller digit, which yields the (0, q-1)-alternating tail deterministically.
    """
    x = Q(x)
    if not sys.contains(x):
        raise DomainError(f"{x} outside [{sys.dom_inf}, {sys.dom_sup}]")
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    r = x
    while r not in seen:
        seen[r] = len(digits)
        d = _greedy_digit(r, sys)
        digits.append(d)
        r = -sys.q * r - d
    j = seen[r]
    return DigitSeq(tuple(digits[:j]), tuple(digits[j:]))


def _is_alternating_period(per: tuple[int, ...], sys: NumerationSystem) -> bool:
    return len(per) == 2 and set(per) == {0, sys.q - 1}


def branch_position(seq: DigitSeq, sys: NumerationSystem) -> Optional[int]:
    """Position m at which the two representations of a branch point differ.

    Returns None when the sequence does not end in a {0, q-1}-alternating
    tail, or when it is one of the two domain endpoints (which alternate from
    position 1 and admit no second representation).
    """
    check_digits(seq, sys)
    if not _is_alternating_period(seq.period, sys):
        return None
    m = len(seq.preperiod)
    return m if m >= 1 else None


def alternate_representation(seq: DigitSeq, sys: NumerationSystem) -> Optional[DigitSeq]:
    """The other digit sequence with the same value, when one exists.

    A second representation exists exactly when the sequence eventually
    alternates between 0 and q-1: the digit in front of the alternating tail
    moves by one and the tail flips phase.  Canonical form guarantees the
    moved digit stays inside the alphabet.
    """
    m = branch_position(seq, sys)
    if m is None:
        return None
    head = seq.preperiod[:-1]
    pivot = seq.preperiod[-1]
    if seq.period[0] == 0:
        other = DigitSeq(head + (pivot + 1,), (sys.q - 1, 0))
    else:
        other = DigitSeq(head + (pivot - 1,), (0, sys.q - 1))
    assert value_of(other, sys) == value_of(seq, sys)
    return other


def is_nega_q_rational(seq: DigitSeq, sys: NumerationSystem) -> bool:
    """True when the represented number has two distinct representations."""
    return branch_position(seq, sys) is not None


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Q(self.lo))
        object.__setattr__(self, "hi", Q(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


def cylinder(prefix: Sequence[int], sys: NumerationSystem) -> Interval:
    """Closed interval of all numbers whose first m digits equal `prefix`.

    The endpoints are the two extreme tail completions; which one is the
    minimum flips with the parity of m because (-q)^(-m) changes sign.
    """
    prefix = tuple(int(d) for d in prefix)
    if not prefix:
        raise ValueError("cylinder prefix must contain at least one digit")
    for d in prefix:
        sys.check_digit(d)
    lo_tail = value_of(DigitSeq(prefix, (sys.q - 1, 0)), sys)
    hi_tail = value_of(DigitSeq(prefix, (0, sys.q - 1)), sys)
    if len(prefix) % 2 == 0:
        return Interval(lo_tail, hi_tail)
    return Interval(hi_tail, lo_tail)


def format_rational(x: Fraction) -> str:
    return str(Q(x))


def parse_rational(text: str) -> Fraction:
    """Parse 'a/b', an integer, or a decimal literal into an exact Fraction."""
    text = text.strip()
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"could not parse rational {text!r}: {exc}") from None
