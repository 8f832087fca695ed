"""Shift operators on digit sequences.

`shift` drops leading digits, `delete_digit` removes one interior digit, and
`ShiftPlan` schedules a chain of single-digit deletions so that the chain
removes a prescribed set of *original* positions.  Every operation keeps the
sequence in the eventually periodic class.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

from .numeration import DigitSeq


def shift(seq: DigitSeq, n: int = 1) -> DigitSeq:
    """Drop the first n digits; n = 0 is the identity."""
    if n < 0:
        raise ValueError(f"shift count must be >= 0, got {n}")
    if n == 0:
        return seq
    L = len(seq.preperiod)
    if n <= L:
        return DigitSeq(seq.preperiod[n:], seq.period)
    r = (n - L) % len(seq.period)
    return DigitSeq((), seq.period[r:] + seq.period[:r])


def delete_digit(seq: DigitSeq, m: int) -> DigitSeq:
    """Remove the digit at position m; later digits move left by one.

    Deleting inside the periodic tail first unrolls the period up to m, then
    drops the unrolled digit; the tail keeps the same cycle, rotated.
    """
    if m < 1:
        raise ValueError(f"deletion position must be >= 1, got {m}")
    L = len(seq.preperiod)
    if m <= L:
        return DigitSeq(seq.preperiod[: m - 1] + seq.preperiod[m:], seq.period)
    P = len(seq.period)
    t = m - L
    unrolled = seq.preperiod + tuple(seq.period[j % P] for j in range(t))
    rotated = seq.period[t % P :] + seq.period[: t % P]
    return DigitSeq(unrolled[:-1], rotated)


def _deletion_steps(targets: tuple[int, ...]) -> tuple[int, ...]:
    """Per-application positions that delete `targets` as original positions.

    After the first j deletions, original position n sits at n minus the
    number of already-deleted positions below it.
    """
    steps = []
    for j, n in enumerate(targets):
        below = sum(1 for prev in targets[:j] if prev < n)
        steps.append(n - below)
    return tuple(steps)


@dataclass(frozen=True)
class ShiftPlan:
    """An ordered set of original positions to delete, with its step schedule."""

    targets: tuple[int, ...]
    steps: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        targets = tuple(int(n) for n in self.targets)
        if any(n < 1 for n in targets):
            raise ValueError("plan positions must be positive integers")
        if len(set(targets)) != len(targets):
            raise ValueError(f"plan positions must be pairwise distinct, got {targets}")
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "steps", _deletion_steps(targets))

    def __len__(self) -> int:
        return len(self.targets)

    def induced_position(self, n: int) -> int:
        """Current position of original position n after the whole plan ran."""
        if n in self.targets:
            raise ValueError(f"position {n} was deleted by the plan")
        front = sorted(self.targets)
        return n - bisect_left(front, n)


def apply_plan(seq: DigitSeq, plan: ShiftPlan) -> DigitSeq:
    """Run the plan's deletions in order; an empty plan is the identity."""
    for step in plan.steps:
        seq = delete_digit(seq, step)
    return seq
