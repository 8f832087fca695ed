"""Injective index sequences given as a finite prefix plus a shifted-identity tail.

An IndexSequence picks which digit position each series term reads.  The
representation n_k = prefix[k] for k <= L, n_k = k + d afterwards keeps
injectivity, surjectivity, and the parity diagnostics decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .operators import ShiftPlan


@dataclass(frozen=True)
class IndexSequence:
    prefix: tuple[int, ...] = ()
    tail_offset: int = 0

    def __post_init__(self) -> None:
        prefix = tuple(int(n) for n in self.prefix)
        object.__setattr__(self, "prefix", prefix)
        if self.tail_offset < 0:
            raise ValueError(f"tail offset must be >= 0, got {self.tail_offset}")
        if any(n < 1 for n in prefix):
            raise ValueError("prefix entries must be positive integers")
        if len(set(prefix)) != len(prefix):
            raise ValueError(f"prefix entries must be pairwise distinct, got {prefix}")
        bound = len(prefix) + self.tail_offset
        for n in prefix:
            if n > bound:
                raise ValueError(
                    f"prefix entry {n} exceeds prefix_len + tail_offset = {bound}; "
                    "the tail would revisit it"
                )

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)

    def value_at(self, k: int) -> int:
        """n_k: the digit position read by the k-th term."""
        if k < 1:
            raise ValueError(f"index must be >= 1, got {k}")
        if k <= self.prefix_len:
            return self.prefix[k - 1]
        return k + self.tail_offset

    def position_of(self, value: int) -> Optional[int]:
        """The k with n_k == value, or None when value is never read."""
        if value in self.prefix:
            return self.prefix.index(value) + 1
        if value > self.prefix_len + self.tail_offset:
            return value - self.tail_offset
        return None

    def covers(self, m: int) -> bool:
        """True when every position 1..m is read by some term."""
        return all(self.position_of(v) is not None for v in range(1, m + 1))

    def is_surjective(self) -> bool:
        """True when every position is eventually read."""
        return self.tail_offset == 0 and all(
            v in self.prefix for v in range(1, self.prefix_len + 1)
        )

    def deletion_step(self, k: int) -> int:
        """n_k minus the number of earlier terms reading a smaller position.

        This is the position to delete at step k so that a chain of
        single-digit deletions removes exactly the original positions
        n_1, ..., n_k.
        """
        n = self.value_at(k)
        if k <= self.prefix_len:
            below = sum(1 for prev in self.prefix[: k - 1] if prev < n)
        else:
            below = k - 1  # every earlier term reads a smaller position
        return n - below

    def initial_plan(self, k: int) -> ShiftPlan:
        """Plan deleting the first k read positions in reading order."""
        return ShiftPlan(tuple(self.value_at(j) for j in range(1, k + 1)))

    def to_text(self) -> str:
        if not self.prefix and self.tail_offset == 0:
            return "id"
        body = ",".join(str(n) for n in self.prefix)
        return f"{body}|+{self.tail_offset}" if self.tail_offset else body

    def __str__(self) -> str:
        return self.to_text()


IDENTITY = IndexSequence()


def parse_index_sequence(text: str) -> IndexSequence:
    """Parse 'id', '2,1', or '3,7,9|+2' into an IndexSequence."""
    text = text.strip()
    if text in ("id", "identity", ""):
        return IDENTITY
    offset = 0
    body = text
    if "|" in text:
        body, tail = text.split("|", 1)
        tail = tail.strip()
        if not tail.startswith("+"):
            raise ValueError(f"tail offset must look like '+2', got {tail!r}")
        offset = int(tail[1:])
    prefix = tuple(int(t) for t in body.split(",") if t.strip() != "")
    return IndexSequence(prefix, offset)


def continuity_condition(s: IndexSequence, m: int) -> bool:
    """Predicate deciding continuity at the rank-m branch points.

    Requires (a) the reads of positions 1..m to finish with m itself, with
    every earlier read inside 1..m-1, and (b) every later read to match its
    term index in parity.  For the prefix+offset representation clause (b)
    reduces to finitely many checks plus an even tail offset.
    """
    if m < 1:
        raise ValueError(f"branch position must be >= 1, got {m}")
    positions = []
    for v in range(1, m + 1):
        pos = s.position_of(v)
        if pos is None:
            return False
        positions.append(pos)
    k0 = max(positions)
    if s.value_at(k0) != m:
        return False
    for k in range(1, k0):
        if s.value_at(k) > m - 1:
            return False
    if s.tail_offset % 2 == 1:
        return False
    for k in range(k0 + 1, s.prefix_len + 1):
        if (k - s.value_at(k)) % 2 != 0:
            return False
    return True
