"""Arithmetical formulas over a closed library of decidable predicates.

Number variables range over ω and carry a *sort* (``eq``, ``term``, ``fml``, ``frame``, ...),
used only to choose per-sort bounds in bounded evaluation. Set variables (free variables or
parameters) appear only in membership atoms and as the first argument of ``Proof``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count
from typing import Mapping, Optional, Union

# -- expressions ----------------------------------------------------------------------------


@dataclass(frozen=True)
class V:
    name: str


@dataclass(frozen=True)
class C:
    value: int


@dataclass(frozen=True)
class PairOf:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Fst:
    arg: "Expr"


@dataclass(frozen=True)
class Snd:
    arg: "Expr"


@dataclass(frozen=True)
class Lin:
    """``mul * arg + add``; used for join positions ``2n`` and ``2n + 1``."""

    mul: int
    add: int
    arg: "Expr"


@dataclass(frozen=True)
class TabOf:
    """Code of ``tab_n``; undefined (atoms become false) outside the table's domain."""

    arg: "Expr"


Expr = Union[V, C, PairOf, Fst, Snd, Lin, TabOf]

# -- formulas -------------------------------------------------------------------------------

PREDICATES = {
    # name: arity; a leading "set" argument is written as a set-variable name
    "IsEq": 1, "IsTerm": 1, "Rep": 3, "SubstInst": 3,
    "IsFml": 1, "NormalAxiom": 1, "FSubstInst": 3,
    "IsFrame": 1, "Val": 2, "Proof": 3, "CodeEq": 2,
}


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Expr, ...]
    setvar: Optional[str] = None  # only for Proof

    def __post_init__(self):
        if PREDICATES.get(self.pred) != len(self.args):
            raise ValueError(f"{self.pred} is not a library predicate of arity {len(self.args)}")
        if (self.pred == "Proof") != (self.setvar is not None):
            raise ValueError("exactly the Proof predicate takes a set argument")


@dataclass(frozen=True)
class Mem:
    setvar: str
    arg: Expr


@dataclass(frozen=True)
class Not:
    body: "Node"


@dataclass(frozen=True)
class And:
    parts: tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Node", ...]


@dataclass(frozen=True)
class Imp:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Iff:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Q:
    kind: str  # "A" or "E"
    var: str
    sort: str
    body: "Node"

    def __post_init__(self):
        if self.kind not in ("A", "E"):
            raise ValueError("quantifier kind is 'A' or 'E'")


Node = Union[Atom, Mem, Not, And, Or, Imp, Iff, Q]


def forall(vars_: list[tuple[str, str]], body: Node) -> Node:
    for name, sort in reversed(vars_):
        body = Q("A", name, sort, body)
    return body


def exists(vars_: list[tuple[str, str]], body: Node) -> Node:
    for name, sort in reversed(vars_):
        body = Q("E", name, sort, body)
    return body


def conj(*parts: Node) -> Node:
    return parts[0] if len(parts) == 1 else And(tuple(parts))


@dataclass(frozen=True)
class ArithFormula:
    """A labelled conjunction of closed-up-to-set-variables formulas.

    ``free`` names the free set variables (to be assigned at evaluation); ``params`` binds the
    parameter set variables to reals. ``context`` carries what the library predicates need
    (signature, tense flag, tab table). ``constants`` records named numerals used in the body.
    """

    conjuncts: tuple[tuple[str, Node], ...]
    free: tuple[str, ...]
    params: Mapping[str, object]
    context: Mapping[str, object] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)

    @property
    def body(self) -> Node:
        return conj(*(n for _, n in self.conjuncts))

    @property
    def prefix(self) -> list[tuple[str, str, str]]:
        return prenex(self.body)[0]

    @property
    def matrix(self) -> Node:
        return prenex(self.body)[1]


# -- free variables -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def expr_vars(e: Expr) -> frozenset[str]:
    if isinstance(e, V):
        return frozenset((e.name,))
    if isinstance(e, C):
        return frozenset()
    if isinstance(e, PairOf):
        return expr_vars(e.left) | expr_vars(e.right)
    return expr_vars(e.arg)


@lru_cache(maxsize=None)
def free_vars(n: Node) -> frozenset[str]:
    if isinstance(n, Atom):
        return frozenset().union(*(expr_vars(a) for a in n.args))
    if isinstance(n, Mem):
        return expr_vars(n.arg)
    if isinstance(n, Not):
        return free_vars(n.body)
    if isinstance(n, (And, Or)):
        return frozenset().union(*(free_vars(p) for p in n.parts))
    if isinstance(n, (Imp, Iff)):
        return free_vars(n.left) | free_vars(n.right)
    return free_vars(n.body) - {n.var}


def set_vars(n: Node) -> set[str]:
    if isinstance(n, Atom):
        return {n.setvar} if n.setvar else set()
    if isinstance(n, Mem):
        return {n.setvar}
    if isinstance(n, (Not, Q)):
        return set_vars(n.body)
    if isinstance(n, (And, Or)):
        return set().union(*(set_vars(p) for p in n.parts))
    return set_vars(n.left) | set_vars(n.right)


# -- classification -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _levels(n: Node) -> tuple[int, int]:
    """Least ``(s, p)`` with ``n`` equivalent, by prenex operations, to a Σ_s and a Π_s formula."""
    if isinstance(n, (Atom, Mem)):
        return 0, 0
    if isinstance(n, Not):
        s, p = _levels(n.body)
        return p, s
    if isinstance(n, (And, Or)):
        ls = [_levels(x) for x in n.parts]
        return max(s for s, _ in ls), max(p for _, p in ls)
    if isinstance(n, Imp):
        (s1, p1), (s2, p2) = _levels(n.left), _levels(n.right)
        return max(p1, s2), max(s1, p2)
    if isinstance(n, Iff):
        (s1, p1), (s2, p2) = _levels(n.left), _levels(n.right)
        a = (max(p1, s2), max(s1, p2))
        b = (max(p2, s1), max(s2, p1))
        return max(a[0], b[0]), max(a[1], b[1])
    s, p = _levels(n.body)
    if n.kind == "A":
        p = max(p, 1)
        return p + 1, p
    s = max(s, 1)
    return s, s + 1


def classify(f: Union[ArithFormula, Node]) -> tuple[str, int]:
    """``("Π", n)`` or ``("Σ", n)`` for the least level reachable by prenexing; Π on ties."""
    s, p = _levels(f.body if isinstance(f, ArithFormula) else f)
    return ("Π", p) if p <= s else ("Σ", s)


# -- prenex form ----------------------------------------------------------------------------

Blocks = list[tuple[str, list[tuple[str, str]]]]


def _map_expr(e: Expr, bound: Mapping[str, str]) -> Expr:
    if isinstance(e, V):
        return V(bound.get(e.name, e.name))
    if isinstance(e, C):
        return e
    if isinstance(e, PairOf):
        return PairOf(_map_expr(e.left, bound), _map_expr(e.right, bound))
    if isinstance(e, Lin):
        return Lin(e.mul, e.add, _map_expr(e.arg, bound))
    return type(e)(_map_expr(e.arg, bound))


def _rebind(n: Node, fresh_name, bound: Mapping[str, str] = {}) -> Node:
    """Copy of ``n`` with each bound variable renamed to ``fresh_name(var)``."""
    if isinstance(n, Atom):
        return Atom(n.pred, tuple(_map_expr(a, bound) for a in n.args), n.setvar)
    if isinstance(n, Mem):
        return Mem(n.setvar, _map_expr(n.arg, bound))
    if isinstance(n, Not):
        return Not(_rebind(n.body, fresh_name, bound))
    if isinstance(n, (And, Or)):
        return type(n)(tuple(_rebind(p, fresh_name, bound) for p in n.parts))
    if isinstance(n, (Imp, Iff)):
        return type(n)(_rebind(n.left, fresh_name, bound), _rebind(n.right, fresh_name, bound))
    new = fresh_name(n.var)
    return Q(n.kind, new, n.sort, _rebind(n.body, fresh_name, {**bound, n.var: new}))


def _rename(n: Node, suffix: str) -> Node:
    return _rebind(n, lambda v: v + suffix)


def _apart(n: Node) -> Node:
    """Rename bound variables so that no name is bound twice or both bound and free."""
    used = set(free_vars(n))

    def fresh_name(v: str) -> str:
        new, k = v, 1
        while new in used:
            new, k = f"{v}_{k}", k + 1
        used.add(new)
        return new

    return _rebind(n, fresh_name)


def _flip(k: str) -> str:
    return "E" if k == "A" else "A"


def _merge(parts: list[tuple[Blocks, Node]], start: str) -> Blocks:
    width = max((len(b) for b, _ in parts), default=0)
    out: Blocks = []
    kind = start
    for level in range(width):
        vs: list[tuple[str, str]] = []
        for b, _ in parts:
            if level < len(b):
                vs.extend(b[level][1])
        out.append((kind, vs))
        kind = _flip(kind)
    return out


def _prenex_as(n: Node, start: str, fresh) -> tuple[Blocks, Node]:
    """Prenex form whose prefix starts with ``start`` (the first block may be empty)."""
    if isinstance(n, (Atom, Mem)):
        return [], n
    if isinstance(n, Not):
        blocks, m = _prenex_as(n.body, _flip(start), fresh)
        return [(_flip(k), vs) for k, vs in blocks], Not(m)
    if isinstance(n, Imp):
        return _prenex_as(Or((Not(n.left), n.right)), start, fresh)
    if isinstance(n, Iff):
        other = _rename(n, f"'{next(fresh)}")
        return _prenex_as(And((Imp(n.left, n.right), Imp(other.right, other.left))), start, fresh)
    if isinstance(n, (And, Or)):
        parts = [_best(p, start, fresh) for p in n.parts]
        return _merge(parts, start), type(n)(tuple(m for _, m in parts))
    if n.kind != start:
        blocks, m = _prenex_as(n, _flip(start), fresh)
        return [(start, [])] + blocks, m
    blocks, m = _prenex_as(n.body, start, fresh)
    if blocks:
        blocks = [(start, [(n.var, n.sort)] + blocks[0][1])] + blocks[1:]
    else:
        blocks = [(start, [(n.var, n.sort)])]
    return blocks, m


def _best(n: Node, start: str, fresh) -> tuple[Blocks, Node]:
    return _prenex_as(n, start, fresh)


def prenex(n: Node) -> tuple[list[tuple[str, str, str]], Node]:
    """Prefix ``[(kind, var, sort), ...]`` and quantifier-free matrix of a prenex form with the
    fewest alternations; the result has the class given by :func:`classify`."""
    kind, _ = classify(n)
    blocks, matrix = _prenex_as(_apart(n), "A" if kind == "Π" else "E", count(1))
    prefix = [(k, v, s) for k, vs in blocks for v, s in vs]
    return prefix, matrix


def alternations(prefix: list[tuple[str, str, str]]) -> int:
    kinds = [k for k, _, _ in prefix]
    return sum(1 for i, k in enumerate(kinds) if i == 0 or k != kinds[i - 1])


# -- text dump ------------------------------------------------------------------------------

def _dump_expr(e: Expr) -> str:
    if isinstance(e, V):
        return e.name
    if isinstance(e, C):
        return str(e.value)
    if isinstance(e, PairOf):
        return f"(pair {_dump_expr(e.left)} {_dump_expr(e.right)})"
    if isinstance(e, Lin):
        return f"(+ (* {e.mul} {_dump_expr(e.arg)}) {e.add})"
    return f"({type(e).__name__.lower()} {_dump_expr(e.arg)})"


def dump_node(n: Node) -> str:
    if isinstance(n, Atom):
        args = ([n.setvar] if n.setvar else []) + [_dump_expr(a) for a in n.args]
        return f"({n.pred} {' '.join(args)})"
    if isinstance(n, Mem):
        return f"(in {n.setvar} {_dump_expr(n.arg)})"
    if isinstance(n, Not):
        return f"(not {dump_node(n.body)})"
    if isinstance(n, (And, Or)):
        return f"({type(n).__name__.lower()} {' '.join(dump_node(p) for p in n.parts)})"
    if isinstance(n, (Imp, Iff)):
        op = "->" if isinstance(n, Imp) else "<->"
        return f"({op} {dump_node(n.left)} {dump_node(n.right)})"
    return f"({'forall' if n.kind == 'A' else 'exists'} ({n.var} {n.sort}) {dump_node(n.body)})"


def dump(f: ArithFormula) -> str:
    """Prenex dump: one line per quantifier block, then the matrix."""
    prefix, matrix = prenex(f.body)
    lines = []
    blocks: list[tuple[str, list[str]]] = []
    for k, v, s in prefix:
        if blocks and blocks[-1][0] == k:
            blocks[-1][1].append(f"({v} {s})")
        else:
            blocks.append((k, [f"({v} {s})"]))
    for k, vs in blocks:
        lines.append(f"({'forall' if k == 'A' else 'exists'} {' '.join(vs)}")
    lines.append("  " + dump_node(matrix) + ")" * len(blocks))
    return "\n".join(lines)
