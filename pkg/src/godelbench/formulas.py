"""Modal and tense formulas: ``p_i | bot | A & B | A -> B | box_s A`` with slot ``s`` in {0, 1}."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Optional, Union


class _Node:
    __slots__ = ()

    def __str__(self) -> str:
        from .parsing import format_formula
        return format_formula(self)  # type: ignore[arg-type]


@dataclass(frozen=True)
class Prop(_Node):
    index: int


@dataclass(frozen=True)
class Bot(_Node):
    pass


@dataclass(frozen=True, eq=True)
class And(_Node):
    left: "Formula"
    right: "Formula"

    @cached_property
    def _hash(self) -> int:
        return hash((2, self.left, self.right))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class Implies(_Node):
    left: "Formula"
    right: "Formula"

    @cached_property
    def _hash(self) -> int:
        return hash((3, self.left, self.right))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class Box(_Node):
    slot: int
    body: "Formula"

    @cached_property
    def _hash(self) -> int:
        return hash((4, self.slot, self.body))

    def __hash__(self) -> int:
        return self._hash


Formula = Union[Prop, Bot, And, Implies, Box]

BOT = Bot()


def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


def top() -> Formula:
    return Implies(BOT, BOT)


def fsize(f: Formula) -> int:
    if isinstance(f, (Prop, Bot)):
        return 1
    if isinstance(f, Box):
        return 1 + fsize(f.body)
    return 1 + fsize(f.left) + fsize(f.right)


def props(f: Formula) -> set[int]:
    if isinstance(f, Prop):
        return {f.index}
    if isinstance(f, Bot):
        return set()
    if isinstance(f, Box):
        return props(f.body)
    return props(f.left) | props(f.right)


def uses_slot(f: Formula, slot: int) -> bool:
    if isinstance(f, Box):
        return f.slot == slot or uses_slot(f.body, slot)
    if isinstance(f, (And, Implies)):
        return uses_slot(f.left, slot) or uses_slot(f.right, slot)
    return False


def is_tense(f: Formula) -> bool:
    return uses_slot(f, 1)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Box):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Implies)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def fsubstitute(f: Formula, subst: Mapping[int, Formula]) -> Formula:
    """Uniform substitution of formulas for propositional variables."""
    if isinstance(f, Prop):
        return subst.get(f.index, f)
    if isinstance(f, Bot):
        return f
    if isinstance(f, Box):
        return Box(f.slot, fsubstitute(f.body, subst))
    return type(f)(fsubstitute(f.left, subst), fsubstitute(f.right, subst))


def match(pattern: Formula, f: Formula, subst: Optional[dict[int, Formula]] = None
          ) -> Optional[dict[int, Formula]]:
    """Return a substitution ``s`` with ``fsubstitute(pattern, s) == f``, or None."""
    s = {} if subst is None else subst
    if isinstance(pattern, Prop):
        bound = s.get(pattern.index)
        if bound is None:
            s[pattern.index] = f
            return s
        return s if bound == f else None
    if type(pattern) is not type(f):
        return None
    if isinstance(pattern, Bot):
        return s
    if isinstance(pattern, Box):
        if pattern.slot != f.slot:  # type: ignore[union-attr]
            return None
        return match(pattern.body, f.body, s)  # type: ignore[union-attr]
    s2 = match(pattern.left, f.left, s)  # type: ignore[union-attr]
    if s2 is None:
        return None
    return match(pattern.right, f.right, s2)  # type: ignore[union-attr]


def k_axiom(slot: int = 0) -> Formula:
    """``box(p0 -> p1) -> (box p0 -> box p1)``."""
    p, q = Prop(0), Prop(1)
    return Implies(Box(slot, Implies(p, q)), Implies(Box(slot, p), Box(slot, q)))


def duality_axiom(slot: int) -> Formula:
    """``p0 -> box_s ~box_{1-s} ~p0``."""
    p = Prop(0)
    return Implies(p, Box(slot, neg(Box(1 - slot, neg(p)))))


def is_k_instance(f: Formula, slot: int) -> bool:
    if not (isinstance(f, Implies) and isinstance(f.left, Box) and isinstance(f.right, Implies)):
        return False
    b, r = f.left, f.right
    if b.slot != slot or not isinstance(b.body, Implies):
        return False
    a, c = b.body.left, b.body.right
    return r.left == Box(slot, a) and r.right == Box(slot, c)


def is_duality_instance(f: Formula, slot: int) -> bool:
    if not isinstance(f, Implies):
        return False
    a = f.left
    return f.right == Box(slot, neg(Box(1 - slot, neg(a))))
