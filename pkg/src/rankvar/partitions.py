"""Integer partitions: the index object for shapes, weights and Jordan types.

Partitions are stored as tuples of positive integers in weakly decreasing
order, never with trailing zeros.  The empty tuple is the partition of 0.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from itertools import accumulate, zip_longest


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def sorted(cls, parts: Iterable[int]) -> "Partition":
        """Build from an unordered multiset of parts, dropping zeros."""
        return cls(sorted((x for x in parts if x), reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The i-th part (0-based), zero past the end."""
        return self[i] if i < len(self) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        if length < len(self):
            raise ValueError("cannot pad to a shorter length")
        return tuple(self) + (0,) * (length - len(self))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in self:
            out[x] = out.get(x, 0) + 1
        return out

    def contains(self, other: "Partition") -> bool:
        """True when the Young diagram of ``other`` sits inside this one."""
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def to_json(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


def conjugate(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for x in lam if x > i) for i in range(lam[0]))


def dominates(lam: Iterable[int], mu: Iterable[int]) -> bool:
    """Dominance order on partitions of the same size."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"incomparable sizes: {lam.size} != {mu.size}")
    pairs = zip_longest(accumulate(lam), accumulate(mu), fillvalue=lam.size)
    return all(a >= b for a, b in pairs)


def complement(m: int, lam: Iterable[int]) -> Partition:
    """``m - lam``: parts reversed and subtracted from ``m``; zeros dropped."""
    lam = Partition(lam)
    if lam and m < lam[0]:
        raise ValueError(f"complement needs m >= largest part, got m={m}, {lam}")
    return Partition(m - x for x in reversed(lam))


def union_sort(lam: Iterable[int], mu: Iterable[int]) -> Partition:
    return Partition.sorted(tuple(lam) + tuple(mu))


def rectangle(part: int, count: int) -> Partition:
    return Partition((part,) * count) if part > 0 else Partition()


def iter_partitions(n: int, max_part: int | None = None,
                    max_length: int | None = None) -> Iterator[Partition]:
    """Partitions of n, lexicographically descending."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_part is None:
        max_part = n

    def rec(remaining: int, cap: int, budget: int | None) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if budget == 0:
            return
        nxt = None if budget is None else budget - 1
        for first in range(min(remaining, cap), 0, -1):
            if budget is not None and first * budget < remaining:
                break
            for rest in rec(remaining - first, first, nxt):
                yield (first,) + rest

    for parts in rec(n, max_part, max_length):
        yield Partition(parts)


def enumerate_partitions(n: int, max_part: int) -> list[Partition]:
    if max_part < 1:
        raise ValueError("max_part must be at least 1")
    return list(iter_partitions(n, max_part))
