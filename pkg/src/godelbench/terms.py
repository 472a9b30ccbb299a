"""First-order terms and equations over a finite signature."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence, Union

from .errors import SignatureMismatch


@dataclass(frozen=True)
class Signature:
    """Function symbols ``f_0 .. f_{k-1}`` with their arities. Variables are unbounded."""

    arities: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arities", tuple(int(a) for a in self.arities))
        if any(a < 0 for a in self.arities):
            raise ValueError("arities must be >= 0")

    def __len__(self) -> int:
        return len(self.arities)

    def arity(self, symbol: int) -> int:
        if not 0 <= symbol < len(self.arities):
            raise SignatureMismatch(f"symbol f{symbol} not in signature of size {len(self.arities)}")
        return self.arities[symbol]


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        from .parsing import format_term
        return format_term(self)


@dataclass(frozen=True)
class App:
    symbol: int
    args: tuple["Term", ...] = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    @cached_property
    def _hash(self) -> int:
        return hash((self.symbol, self.args))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        from .parsing import format_term
        return format_term(self)


Term = Union[Var, App]
Position = tuple[int, ...]


@dataclass(frozen=True)
class Equation:
    left: Term
    right: Term

    def __str__(self) -> str:
        from .parsing import format_equation
        return format_equation(self)

    def flipped(self) -> "Equation":
        return Equation(self.right, self.left)


def check_term(t: Term, sig: Signature) -> None:
    """Raise :class:`SignatureMismatch` unless ``t`` is well formed over ``sig``."""
    if isinstance(t, Var):
        if t.index < 0:
            raise SignatureMismatch("negative variable index")
        return
    if sig.arity(t.symbol) != len(t.args):
        raise SignatureMismatch(
            f"f{t.symbol} expects {sig.arity(t.symbol)} arguments, got {len(t.args)}")
    for a in t.args:
        check_term(a, sig)


def size(t: Term) -> int:
    """Number of nodes in the syntax tree."""
    if isinstance(t, Var):
        return 1
    return 1 + sum(size(a) for a in t.args)


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def positions(t: Term, prefix: Position = ()) -> Iterator[tuple[Position, Term]]:
    """All (position, subterm) pairs in pre-order."""
    yield prefix, t
    if isinstance(t, App):
        for i, a in enumerate(t.args):
            yield from positions(a, prefix + (i,))


def subterm_at(t: Term, pos: Position) -> Term:
    for i in pos:
        t = t.args[i]  # type: ignore[union-attr]
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    assert isinstance(t, App)
    i = pos[0]
    args = list(t.args)
    args[i] = replace_at(args[i], pos[1:], new)
    return App(t.symbol, tuple(args))


def substitute(t: Term, subst: Mapping[int, Term] | Sequence[Term]) -> Term:
    """Simultaneous substitution; variables outside ``subst`` map to themselves."""
    if isinstance(t, Var):
        if isinstance(subst, Mapping):
            return subst.get(t.index, t)
        return subst[t.index] if t.index < len(subst) else t
    return App(t.symbol, tuple(substitute(a, subst) for a in t.args))


def substitute_equation(e: Equation, subst) -> Equation:
    return Equation(substitute(e.left, subst), substitute(e.right, subst))


def enumerate_terms(sig: Signature, max_size: int, num_vars: int) -> list[Term]:
    """All terms with at most ``max_size`` nodes over ``x_0 .. x_{num_vars-1}``, grouped by size."""
    by_size: dict[int, list[Term]] = {1: [Var(i) for i in range(num_vars)]}
    by_size[1] += [App(f, ()) for f, a in enumerate(sig.arities) if a == 0]
    for s in range(2, max_size + 1):
        level: list[Term] = []
        for f, ar in enumerate(sig.arities):
            if ar == 0:
                continue
            for args in _arg_tuples(by_size, ar, s - 1):
                level.append(App(f, args))
        by_size[s] = level
    return [t for s in range(1, max_size + 1) for t in by_size.get(s, [])]


def _arg_tuples(by_size, arity: int, total: int):
    if arity == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - arity + 2):
        for head in by_size.get(first, []):
            for rest in _arg_tuples(by_size, arity - 1, total - first):
                yield (head,) + rest
