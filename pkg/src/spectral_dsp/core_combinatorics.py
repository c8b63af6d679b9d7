"""Partitions, conjugation, unions, level functions and level domains."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers. The empty partition is allowed."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted((int(p) for p in parts), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, k: int) -> int:
        return self.parts[k]

    def __repr__(self) -> str:
        return f"Partition{self.parts}"

    @cached_property
    def levels(self) -> Tuple[int, ...]:
        """``levels[mu-1] = gamma_P(mu)`` by walking the columns of the diagram."""
        heights = conjugate(self).parts
        out: List[int] = []
        for col, h in enumerate(heights, start=1):
            out.extend([col] * h)
        return tuple(out)

    def to_json(self) -> List[int]:
        return list(self.parts)


def conjugate(p: Partition) -> Partition:
    """``n_j = #{k : m_k >= j}``."""
    if not p.parts:
        return Partition()
    return Partition(tuple(sum(1 for m in p.parts if m >= j) for j in range(1, p.parts[0] + 1)))


def union(p: Partition, q: Partition) -> Partition:
    """Multiset union of parts."""
    return Partition.of(p.parts + q.parts)


def level_function(p: Partition, mu: int) -> int:
    """Column of the box numbered ``mu`` (top-to-bottom inside a column, columns left to right)."""
    if not 1 <= mu <= p.size:
        raise ValueError(f"level index {mu} outside 1..{p.size}")
    return p.levels[mu - 1]


@dataclass(frozen=True)
class LevelDomain:
    partition: Partition
    points: FrozenSet[Tuple[int, int]]

    def rows(self) -> List[List[int]]:
        """``rows()[a]`` lists the u with ``(u, a)`` in the domain."""
        height = max((a for _, a in self.points), default=-1) + 1
        return [sorted(u for u, b in self.points if b == a) for a in range(height)]

    def __contains__(self, item) -> bool:
        return item in self.points

    def __len__(self) -> int:
        return len(self.points)


def level_domain(p: Partition) -> LevelDomain:
    r = p.size
    pts = frozenset((u, a) for u in range(r) for a in range(level_function(p, r - u)))
    return LevelDomain(p, pts)


def row_length(p: Partition, a: int) -> int:
    """Number of ``mu`` with ``gamma_P(mu) > a``: the length of row ``a`` of the level domain."""
    return sum(1 for g in p.levels if g > a)


def minimal_level_indices(p: Partition) -> Tuple[FrozenSet[int], FrozenSet[Tuple[int, int]]]:
    """Minimal indices and the matching derivative indices.

    ``J_min`` holds coefficient indices mu (bottom box of column m_j). The
    derivative attached to the term ``s_mu y^(r-mu)`` has ``u = r - mu``, so
    ``G_min = {(r - mu, gamma(mu)) : mu in J_min}``.
    """
    if not p.parts:
        return frozenset(), frozenset()
    heights = conjugate(p).parts
    j_min = frozenset(sum(heights[: m]) for m in p.parts)
    r = p.size
    g_min = frozenset((r - mu, level_function(p, mu)) for mu in j_min)
    return j_min, g_min


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)


def full_flag(r: int) -> Partition:
    return Partition((1,) * r)


def single_row(r: int) -> Partition:
    return Partition((r,))


def triangular_sum(p: Partition) -> int:
    return sum(m * (m + 1) // 2 for m in p.parts)


def as_partition(parts: Sequence[int] | Partition) -> Partition:
    return parts if isinstance(parts, Partition) else Partition.of(parts)
