"""Independent reference implementations used to cross-check the package.

None of these import the routine they check; they favour the most literal reading of each
definition over speed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial

from godelbench.formulas import And, Bot, Box, Implies, Prop
from godelbench.terms import App, Var


# -- pairing -------------------------------------------------------------------------------

def diagonal_pair(a: int, b: int) -> int:
    """Cantor pairing by walking the diagonals ``(s,0), (s-1,1), ..., (0,s)``."""
    n = 0
    s = 0
    while True:
        for y in range(s + 1):
            if (s - y, y) == (a, b):
                return n
            n += 1
        s += 1


# -- terms ---------------------------------------------------------------------------------

def all_terms(arities: tuple[int, ...], max_size: int, num_vars: int) -> list:
    """Every term with at most ``max_size`` nodes, grown size by size."""
    by_size: dict[int, list] = {1: [Var(i) for i in range(num_vars)]
                                + [App(s, ()) for s, a in enumerate(arities) if a == 0]}
    for n in range(2, max_size + 1):
        out = []
        for sym, ar in enumerate(arities):
            if ar == 0:
                continue
            for split in product(range(1, n), repeat=ar):
                if sum(split) != n - 1:
                    continue
                for args in product(*(by_size.get(k, []) for k in split)):
                    out.append(App(sym, tuple(args)))
        by_size[n] = out
    return [t for n in sorted(by_size) for t in by_size[n]]


def one_replacements(t, s, s2) -> set:
    """Terms obtained from ``t`` by rewriting exactly one occurrence of ``s`` to ``s2``."""
    out = set()
    if t == s:
        out.add(s2)
    if isinstance(t, App):
        for k, arg in enumerate(t.args):
            for new in one_replacements(arg, s, s2):
                out.add(App(t.symbol, t.args[:k] + (new,) + t.args[k + 1:]))
    return out


def eval_term(t, tables, arities, n, env) -> int:
    if isinstance(t, Var):
        return env[t.index]
    vals = [eval_term(a, tables, arities, n, env) for a in t.args]
    idx = 0
    for v in vals:
        idx = idx * n + v
    return tables[t.symbol][idx]


# -- frames --------------------------------------------------------------------------------

def burnside_digraph_count(n: int) -> int:
    """Number of relations on ``n`` points up to relabelling: the average, over permutations,
    of ``2 ** (number of cycles of the induced action on ordered pairs)``."""
    total = 0
    cells = [(i, j) for i in range(n) for j in range(n)]
    for p in permutations(range(n)):
        seen = set()
        cycles = 0
        for c in cells:
            if c in seen:
                continue
            cycles += 1
            while c not in seen:
                seen.add(c)
                c = (p[c[0]], p[c[1]])
        total += 2 ** cycles
    result = Fraction(total, factorial(n))
    assert result.denominator == 1
    return int(result)


def naive_true_at(edges: set, n: int, f, w: int, val: dict) -> bool:
    """Truth at ``w``; slot 0 looks along edges, slot 1 against them."""
    if isinstance(f, Prop):
        return w in val.get(f.index, frozenset())
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return naive_true_at(edges, n, f.left, w, val) and naive_true_at(edges, n, f.right, w, val)
    if isinstance(f, Implies):
        return (not naive_true_at(edges, n, f.left, w, val)) or naive_true_at(edges, n, f.right, w, val)
    if isinstance(f, Box):
        nbrs = [v for v in range(n) if ((w, v) if f.slot == 0 else (v, w)) in edges]
        return all(naive_true_at(edges, n, f.body, v, val) for v in nbrs)
    raise TypeError(f)


def _props(f) -> set:
    if isinstance(f, Prop):
        return {f.index}
    if isinstance(f, Bot):
        return set()
    if isinstance(f, Box):
        return _props(f.body)
    return _props(f.left) | _props(f.right)


def naive_valid(edges: set, n: int, f) -> bool:
    ps = sorted(_props(f))
    subsets = [frozenset(w for w in range(n) if m >> w & 1) for m in range(1 << n)]
    for choice in product(subsets, repeat=len(ps)):
        val = dict(zip(ps, choice))
        if not all(naive_true_at(edges, n, f, w, val) for w in range(n)):
            return False
    return True


# -- propositional -------------------------------------------------------------------------

def naive_tautology(f) -> bool:
    """Boxed subformulas are opaque atoms; try every truth assignment."""
    atoms: list = []

    def collect(g):
        if isinstance(g, (Prop, Box)):
            if g not in atoms:
                atoms.append(g)
        elif isinstance(g, (And, Implies)):
            collect(g.left)
            collect(g.right)

    def ev(g, val):
        if isinstance(g, Bot):
            return False
        if isinstance(g, (Prop, Box)):
            return val[g]
        if isinstance(g, And):
            return ev(g.left, val) and ev(g.right, val)
        return (not ev(g.left, val)) or ev(g.right, val)

    collect(f)
    return all(ev(f, dict(zip(atoms, bits))) for bits in product((False, True), repeat=len(atoms)))


# -- proofs --------------------------------------------------------------------------------

def _subst(f, s: dict):
    if isinstance(f, Prop):
        return s.get(f.index, f)
    if isinstance(f, Bot):
        return f
    if isinstance(f, Box):
        return Box(f.slot, _subst(f.body, s))
    return type(f)(_subst(f.left, s), _subst(f.right, s))


def _neg(f):
    return Implies(f, Bot())


def naive_check(steps, extra=None, base_axioms=(), in_base=None, tense=False) -> bool:
    """A literal reading of the Hilbert rules. ``steps`` is a list of (formula, justification)
    where justification is a tuple such as ``("mp", i, j)`` or ``("k", slot)``."""
    slots = (0, 1) if tense else (0,)
    for k, (f, j) in enumerate(steps):
        kind, args = j[0], j[1:]
        if kind == "taut":
            ok = naive_tautology(f)
        elif kind == "k":
            s = args[0]
            ok = (s in slots and isinstance(f, Implies) and isinstance(f.left, Box)
                  and f.left.slot == s and isinstance(f.left.body, Implies)
                  and f.right == Implies(Box(s, f.left.body.left), Box(s, f.left.body.right)))
        elif kind == "dual":
            s = args[0]
            ok = (tense and s in slots and isinstance(f, Implies)
                  and f.right == Box(s, _neg(Box(1 - s, _neg(f.left)))))
        elif kind == "mp":
            a, b = args
            ok = 0 <= a < k and 0 <= b < k and steps[a][0] == Implies(steps[b][0], f)
        elif kind == "nec":
            a, s = args
            ok = 0 <= a < k and s in slots and f == Box(s, steps[a][0])
        elif kind == "extra":
            ok = extra is not None and _subst(extra, dict(args[0])) == f
        elif kind == "axiom":
            i, s = args
            ok = 0 <= i < len(base_axioms) and _subst(base_axioms[i], dict(s)) == f
        elif kind == "base":
            ok = in_base is not None and in_base(f)
        else:
            ok = False
        if not ok:
            return False
    return bool(steps)
