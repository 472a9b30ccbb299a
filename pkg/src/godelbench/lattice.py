"""Finite lattices of downsets, with the structural checks used on chains.

Downsets of the chain ``0 < 1 < ... < n-1`` are exactly its prefixes, so they form a chain
of ``n + 1`` elements under inclusion. :class:`FiniteLattice` is a general finite lattice given
by its order, used for fixtures such as M₃ and the power set of an antichain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Hashable, Optional, Sequence

from .errors import EnumerationTooLarge

MAX_TRIPLES = 2_000_000
MAX_FAMILY_BITS = 16


@dataclass(frozen=True)
class FiniteChain:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a chain needs at least one element")

    @property
    def elements(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class FiniteLattice:
    """Elements with a partial order in which every pair has a meet and a join."""

    elements: tuple[Hashable, ...]
    leq: Callable[[Hashable, Hashable], bool] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for a, b in product(self.elements, repeat=2):
            self.meet(a, b)
            self.join(a, b)

    def _extreme(self, candidates, better) -> Hashable:
        best = [c for c in candidates if all(better(c, d) for d in candidates)]
        if len(best) != 1:
            raise ValueError("not a lattice: missing meet or join")
        return best[0]

    def meet(self, a, b):
        lower = [c for c in self.elements if self.leq(c, a) and self.leq(c, b)]
        return self._extreme(lower, lambda c, d: self.leq(d, c))

    def join(self, a, b):
        upper = [c for c in self.elements if self.leq(a, c) and self.leq(b, c)]
        return self._extreme(upper, lambda c, d: self.leq(c, d))

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class DownsetLattice(FiniteLattice):
    """Downsets (as frozensets) of a finite chain, ordered by inclusion."""

    chain: Optional[FiniteChain] = None

    def meet(self, a: frozenset, b: frozenset) -> frozenset:
        return a & b

    def join(self, a: frozenset, b: frozenset) -> frozenset:
        return a | b


def _subset(a: frozenset, b: frozenset) -> bool:
    return a <= b


def is_downset(chain: FiniteChain, d: frozenset) -> bool:
    return all(0 <= x < chain.size for x in d) and all(y in d for x in d for y in range(x))


def principal(q: int) -> frozenset:
    """``↓q`` in the chain."""
    return frozenset(range(q + 1))


def downset_lattice(chain: FiniteChain) -> DownsetLattice:
    """All downsets of ``chain`` sorted by size: ``∅, ↓0, ↓1, ..., ↓(n-1)``."""
    elems = tuple(frozenset(range(k)) for k in range(chain.size + 1))
    return DownsetLattice(elems, _subset, chain)


def power_set_lattice(atoms: Sequence[Hashable]) -> FiniteLattice:
    subsets = [frozenset(c) for r in range(len(atoms) + 1) for c in combinations(atoms, r)]
    return FiniteLattice(tuple(subsets), _subset)


def m3() -> FiniteLattice:
    """The diamond: ``0 < a, b, c < 1`` with ``a, b, c`` pairwise incomparable."""
    up = {"0": {"0", "a", "b", "c", "1"}, "a": {"a", "1"}, "b": {"b", "1"}, "c": {"c", "1"},
          "1": {"1"}}
    return FiniteLattice(("0", "a", "b", "c", "1"), lambda x, y: y in up[x])


def exists_incomparable_pair(lat: FiniteLattice) -> Optional[tuple]:
    for a, b in combinations(lat.elements, 2):
        if not lat.leq(a, b) and not lat.leq(b, a):
            return a, b
    return None


def check_distributive(lat: FiniteLattice, max_triples: int = MAX_TRIPLES) -> bool:
    """``a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`` for every triple."""
    if len(lat) ** 3 > max_triples:
        raise EnumerationTooLarge(f"{len(lat) ** 3} triples exceed {max_triples}")
    for a, b, c in product(lat.elements, repeat=3):
        if lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)):
            return False
    return True


def check_meet_join(lat: DownsetLattice) -> bool:
    """Meet and join computed from the order agree with intersection and union."""
    generic = FiniteLattice(lat.elements, _subset)
    return all(generic.meet(a, b) == a & b and generic.join(a, b) == a | b
               for a, b in product(lat.elements, repeat=2))


@dataclass(frozen=True)
class CompactnessReport:
    size: int
    elements: int
    is_chain: bool
    distributive: bool
    decompositions: tuple[tuple[int, ...], ...]
    covers_checked: int
    all_ok: bool

    def lines(self) -> list[str]:
        out = [f"chain size: {self.size}", f"downsets: {self.elements}",
               f"chain: {'yes' if self.is_chain else 'no'}",
               f"distributive: {'yes' if self.distributive else 'no'}"]
        for qs in self.decompositions:
            lhs = "{" + ",".join(map(str, qs)) + "}"
            rhs = " ∪ ".join(f"↓{q}" for q in qs) or "(empty union)"
            out.append(f"{lhs} = {rhs}")
        out.append(f"covering families checked: {self.covers_checked}")
        out.append(f"all checks: {'pass' if self.all_ok else 'FAIL'}")
        return out


def principal_downset_compactness_demo(chain: FiniteChain) -> CompactnessReport:
    """Check that every downset is the union of the principal downsets below it, and that
    whenever ``↓q`` lies in the union of a family of downsets it lies in a single member."""
    lat = downset_lattice(chain)
    ok = True
    decomps = []
    for d in lat.elements:
        qs = tuple(sorted(d))
        union = frozenset().union(*(principal(q) for q in qs))
        ok &= union == d
        decomps.append(qs)
    covers = 0
    nonempty = [d for d in lat.elements if d]
    if len(nonempty) > MAX_FAMILY_BITS:
        raise EnumerationTooLarge(f"2^{len(nonempty)} covering families")
    for r in range(1, len(nonempty) + 1):
        for family in combinations(nonempty, r):
            union = frozenset().union(*family)
            for q in chain.elements:
                if principal(q) <= union:
                    covers += 1
                    ok &= any(principal(q) <= m for m in family)
    chain_ok = exists_incomparable_pair(lat) is None
    dist = check_distributive(lat)
    return CompactnessReport(chain.size, len(lat), chain_ok, dist, tuple(decomps), covers,
                             ok and chain_ok and dist)
