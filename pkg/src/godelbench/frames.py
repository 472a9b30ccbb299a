"""Finite Kripke frames as relation bitmasks, and canonical forms under relabelling."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable


@dataclass(frozen=True)
class FiniteFrame:
    """Carrier ``{0..size-1}`` with relation ``R``; bit ``i*size + j`` of ``mask`` is ``i R j``.

    In tense mode the second box reads the converse of ``R``; no second relation is stored.
    """

    size: int
    mask: int = 0
    tense: bool = False

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("frames need at least one point")
        if not 0 <= self.mask < 1 << (self.size * self.size):
            raise ValueError(f"relation mask out of range for {self.size} points")

    @classmethod
    def from_edges(cls, size: int, edges: Iterable[tuple[int, int]], tense: bool = False
                   ) -> "FiniteFrame":
        mask = 0
        for i, j in edges:
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError(f"edge ({i}, {j}) outside carrier of size {size}")
            mask |= 1 << (i * size + j)
        return cls(size, mask, tense)

    @property
    def edges(self) -> list[tuple[int, int]]:
        n = self.size
        return [(i, j) for i in range(n) for j in range(n) if self.mask >> (i * n + j) & 1]

    def related(self, i: int, j: int) -> bool:
        return bool(self.mask >> (i * self.size + j) & 1)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        return tuple(tuple(j for j in range(n) if self.related(i, j)) for i in range(n))

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        return tuple(tuple(j for j in range(n) if self.related(j, i)) for i in range(n))

    def with_mode(self, tense: bool) -> "FiniteFrame":
        return FiniteFrame(self.size, self.mask, tense)

    def as_record(self) -> dict:
        return {"size": self.size, "edges": [list(e) for e in self.edges]}


@lru_cache(maxsize=None)
def _cell_maps(n: int) -> tuple[tuple[int, ...], ...]:
    """For each permutation p of the carrier, the image cell index of every cell."""
    maps = []
    for p in permutations(range(n)):
        maps.append(tuple(p[i] * n + p[j] for i in range(n) for j in range(n)))
    return tuple(maps)


def permute_mask(n: int, mask: int, cell_map: tuple[int, ...]) -> int:
    out = 0
    cell = 0
    while mask:
        if mask & 1:
            out |= 1 << cell_map[cell]
        mask >>= 1
        cell += 1
    return out


def canonical_mask(n: int, mask: int) -> int:
    """Least relation mask over all relabellings of the carrier."""
    return min(permute_mask(n, mask, m) for m in _cell_maps(n))


def canonical_frame(frame: FiniteFrame) -> FiniteFrame:
    return FiniteFrame(frame.size, canonical_mask(frame.size, frame.mask), frame.tense)
