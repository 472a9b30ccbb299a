"""Bounded evaluation of arithmetical formulas.

Quantifiers range over ``0..bound`` (a per-sort bound when one is given). Evaluation is
structural: a block of like quantifiers ``∀x̄ (G_1 ∧ ... ∧ G_m → C)`` is searched for a *hit*
(all guards true, ``C`` false), and ``∃x̄ (G_1 ∧ ... ∧ G_m)`` for a tuple making every
conjunct true. Two exact optimisations keep this tractable:

* guards are tested as soon as their variables are bound, pruning the rest of the block;
* a guard that determines one variable from the others (``Rep``, ``SubstInst``,
  ``FSubstInst``, ``CodeEq``, membership in an enumerable real, ``Proof`` with a searchable
  logic) generates that variable's candidates instead of scanning the whole range.

Both preserve the bounded semantics, except that a ``Proof`` solver can only produce the proofs
its search finds. The search order within a block is fixed by which variables each solver needs;
when it differs from the written order, all hits are collected so the lexicographically least
one is still reported.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Union

from ..hilbert import (BaseAxiomInstance, InBase, ProofObject, ProofStep, encode_proof,
                       proof_predicate)
from ..pairing import pair, unpair
from . import library
from .reals import Real
from .syntax import (And, ArithFormula, Atom, C, Expr, Fst, Iff, Imp, Lin, Mem, Node, Not, Or,
                     PairOf, Q, Snd, TabOf, V, classify, expr_vars, free_vars)


@dataclass(frozen=True)
class Falsified:
    """A tuple for the leading universal quantifiers at which the formula fails.

    ``definitive`` holds when the failure does not depend on the bound or on approximate
    parameters (Π⁰₁ and below, no caveat)."""

    witness: Mapping[str, int]
    conjunct: Optional[str] = None
    definitive: bool = False
    caveat: bool = False


@dataclass(frozen=True)
class ConsistentUpTo:
    bound: int
    caveat: bool = False


@dataclass(frozen=True)
class WitnessedUpTo:
    bound: int
    witness: Mapping[str, int] = field(default_factory=dict)
    caveat: bool = False


BoundedVerdict = Union[Falsified, ConsistentUpTo, WitnessedUpTo]


def _conjuncts(n: Node) -> list[Node]:
    if isinstance(n, And):
        return [x for p in n.parts for x in _conjuncts(p)]
    return [n]


def leading_block(n: Node, kind: str = "A") -> tuple[list[tuple[str, str]], Node]:
    vs = []
    while isinstance(n, Q) and n.kind == kind:
        vs.append((n.var, n.sort))
        n = n.body
    return vs, n


class _Evaluator:
    def __init__(self, f: ArithFormula, assignment: Mapping[str, Real], bound: int,
                 sort_bounds: Optional[Mapping[str, int]] = None):
        if bound < 0:
            raise ValueError("bound must be >= 0")
        missing = set(f.free) - set(assignment)
        if missing:
            raise ValueError(f"unassigned set variables: {sorted(missing)}")
        self.sets: dict[str, Real] = {**f.params, **assignment}
        self.ctx = f.context
        self.default = bound
        self.sort_bounds = dict(sort_bounds or {})
        self.caveat = False

    def bound(self, sort: str) -> int:
        return self.sort_bounds.get(sort, self.default)

    # -- values ----------------------------------------------------------------------------

    def value(self, e: Expr, env: Mapping[str, int]) -> Optional[int]:
        if isinstance(e, V):
            return env[e.name]
        if isinstance(e, C):
            return e.value
        if isinstance(e, PairOf):
            a, b = self.value(e.left, env), self.value(e.right, env)
            return None if a is None or b is None else pair(a, b)
        a = self.value(e.arg, env)
        if a is None:
            return None
        if isinstance(e, Fst):
            return unpair(a)[0]
        if isinstance(e, Snd):
            return unpair(a)[1]
        if isinstance(e, Lin):
            return e.mul * a + e.add
        if isinstance(e, TabOf):
            return self.ctx.get("tabs", {}).get(a)
        raise TypeError(e)

    def member(self, name: str, n: Optional[int]) -> bool:
        if n is None or n < 0:
            return False
        real = self.sets[name]
        ans = n in real
        if not self.caveat and real.uncertain(n, ans):
            self.caveat = True
        return ans

    # -- truth -----------------------------------------------------------------------------

    def holds(self, n: Node, env: Mapping[str, int]) -> bool:
        if isinstance(n, Atom):
            args = [self.value(a, env) for a in n.args]
            if any(a is None or a < 0 for a in args):
                return False
            if n.pred == "Proof":
                i, p, j = args
                return proof_predicate(lambda c: self.member(n.setvar, c), i, p, j,
                                       self.ctx.get("tense", True))
            return library.evaluate_atom(n.pred, tuple(args), self.ctx)
        if isinstance(n, Mem):
            return self.member(n.setvar, self.value(n.arg, env))
        if isinstance(n, Not):
            return not self.holds(n.body, env)
        if isinstance(n, And):
            return all(self.holds(p, env) for p in n.parts)
        if isinstance(n, Or):
            return any(self.holds(p, env) for p in n.parts)
        if isinstance(n, Imp):
            return not self.holds(n.left, env) or self.holds(n.right, env)
        if isinstance(n, Iff):
            return self.holds(n.left, env) == self.holds(n.right, env)
        vs, body = leading_block(n, n.kind)
        hit = self.first_hit(n.kind, vs, body, env)
        return (hit is None) if n.kind == "A" else (hit is not None)

    # -- block search ----------------------------------------------------------------------

    def _split(self, kind: str, body: Node) -> tuple[list[Node], Optional[Node]]:
        if kind == "E":
            return _conjuncts(body), None
        guards: list[Node] = []
        while isinstance(body, Imp):
            guards.extend(_conjuncts(body.left))
            body = body.right
        return guards, body

    def _solver(self, g: Node, v: str, bound_now: set[str]):
        """A function (env, cap) -> candidate values for ``v`` derived from guard ``g``, or None."""
        def ready(*es: Expr) -> bool:
            return all(expr_vars(e) <= bound_now for e in es)

        if isinstance(g, Mem) and g.arg == V(v):
            real = self.sets[g.setvar]
            if real.members_upto(0) is not None:
                return lambda env, cap: real.members_upto(cap)
            return None
        if not isinstance(g, Atom):
            return None
        a = g.args
        sig, tense = self.ctx.get("sig"), self.ctx.get("tense", False)
        if g.pred == "Rep" and a[0] == V(v) and ready(a[1], a[2]):
            return lambda env, cap: library.rep_results(self.value(a[1], env), self.value(a[2], env),
                                                   sig)
        if g.pred == "SubstInst" and a[0] == V(v) and ready(a[1], a[2]):
            return lambda env, cap: _opt(library.subst_result(self.value(a[1], env),
                                                         self.value(a[2], env), sig))
        if g.pred == "FSubstInst" and a[0] == V(v) and ready(a[1], a[2]):
            return lambda env, cap: _opt(library.fsubst_result(self.value(a[1], env),
                                                          self.value(a[2], env), tense))
        if g.pred == "CodeEq":
            for mine, other in ((a[0], a[1]), (a[1], a[0])):
                if mine == V(v) and ready(other):
                    return lambda env, cap, o=other: _opt(self.value(o, env))
        if g.pred == "Proof" and a[1] == V(v) and ready(a[0], a[2]):
            real = self.sets[g.setvar]
            if hasattr(real, "proofs"):
                def proofs(env, cap):
                    extra, goal = self.value(a[0], env), self.value(a[2], env)
                    if extra is None or goal is None:
                        return []
                    return [_oracle_code(p) for p in real.proofs(extra, goal)]
                return proofs
        return None

    def _plan(self, vs: list[tuple[str, str]], guards: list[Node], outer: set[str]):
        """Static binding order: ``[(var, sort, solver or None), ...]``."""
        order = []
        everything = set(outer) | {n for n, _ in vs}
        # variables some guard could generate once the rest are bound: bind them last
        targets = {n for n, _ in vs
                   if any(n in free_vars(g) and self._solver(g, n, everything - {n}) is not None
                          for g in guards)}
        bound_now = set(outer)
        todo = list(vs)
        while todo:
            pick = None
            for name, sort in todo:
                for g in guards:
                    if name in free_vars(g):
                        s = self._solver(g, name, bound_now)
                        if s is not None:
                            pick = (name, sort, s)
                            break
                if pick:
                    break
            if pick is None:
                name, sort = next((t for t in todo if t[0] not in targets), todo[0])
                pick = (name, sort, None)
            order.append(pick)
            bound_now.add(pick[0])
            todo = [t for t in todo if t[0] != pick[0]]
        return order

    def hits(self, kind: str, vs: list[tuple[str, str]], body: Node, env: Mapping[str, int]
             ) -> tuple[Iterator[dict], bool]:
        """Generator of hits and whether they arrive in lexicographic order."""
        guards, concl = self._split(kind, body)
        plan = self._plan(vs, guards, set(env))
        natural = [p[0] for p in plan] == [n for n, _ in vs]
        block = {n for n, _ in vs}
        # guard (and conclusion) checks become due at the depth binding their last variable
        due: list[list[Node]] = [[] for _ in plan]
        concl_at = len(plan) - 1
        depth_of = {p[0]: d for d, p in enumerate(plan)}
        for g in guards:
            d = max((depth_of[x] for x in free_vars(g) & block), default=0)
            due[d].append(g)
        if concl is not None:
            concl_at = max((depth_of[x] for x in free_vars(concl) & block), default=0)

        def rec(d: int, env: dict) -> Iterator[dict]:
            name, sort, solver = plan[d]
            cap = self.bound(sort)
            if solver is None:
                candidates = range(cap + 1)
            else:
                candidates = sorted({c for c in solver(env, cap) if c is not None and 0 <= c <= cap})
            for x in candidates:
                env[name] = x
                if not all(self.holds(g, env) for g in due[d]):
                    continue
                if concl is not None and d == concl_at and self.holds(concl, env):
                    continue
                if d + 1 == len(plan):
                    yield {n: env[n] for n, _ in vs}
                else:
                    yield from rec(d + 1, env)
            env.pop(name, None)

        if not plan:
            def trivial() -> Iterator[dict]:
                if all(self.holds(g, env) for g in guards) and (
                        concl is None or not self.holds(concl, env)):
                    yield {}
            return trivial(), True
        return rec(0, dict(env)), natural

    def first_hit(self, kind: str, vs, body: Node, env: Mapping[str, int]) -> Optional[dict]:
        gen, _ = self.hits(kind, vs, body, env)
        return next(gen, None)

    def least_hit(self, kind: str, vs, body: Node, env: Mapping[str, int]) -> Optional[dict]:
        gen, natural = self.hits(kind, vs, body, env)
        if natural:
            return next(gen, None)
        names = [n for n, _ in vs]
        return min(gen, key=lambda h: [h[n] for n in names], default=None)


def _opt(x: Optional[int]) -> list[int]:
    return [] if x is None else [x]


def _oracle_code(p: ProofObject) -> int:
    """Proof code for the oracle-mode checker: axiom instances become base-membership lines."""
    steps = tuple(ProofStep(s.formula, InBase()) if isinstance(s.justification, BaseAxiomInstance)
                  else s for s in p.steps)
    return encode_proof(ProofObject(steps))


def _conjunct_result(ev: _Evaluator, node: Node):
    vs, body = leading_block(node, "A")
    if vs:
        return vs, ev.least_hit("A", vs, body, {})
    return [], (None if ev.holds(node, {}) else {})


def eval_bounded(f: ArithFormula, assignment: Mapping[str, Real], bound: int,
                 sort_bounds: Optional[Mapping[str, int]] = None, threads: int = 1
                 ) -> BoundedVerdict:
    """Evaluate ``f`` with every quantifier bounded by ``bound`` (or ``sort_bounds[sort]``).

    For formulas of Π class the result is ``Falsified`` with the least failing tuple of the
    leading universal variables (conjuncts' variables concatenated in order, unused ones 0) or
    ``ConsistentUpTo``. Σ formulas give ``WitnessedUpTo`` or a non-definitive ``Falsified``.
    """
    ev = _Evaluator(f, assignment, bound, sort_bounds)
    kind, level = classify(f)
    if kind == "Σ" and level > 0:
        vs, body = leading_block(f.body, "E")
        hit = ev.first_hit("E", vs, body, {})
        if hit is not None:
            return WitnessedUpTo(bound, hit, ev.caveat)
        return Falsified({}, None, False, ev.caveat)
    nodes = [n for _, n in f.conjuncts]
    if threads > 1 and len(nodes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda n: _conjunct_result(ev, n), nodes))
    else:
        results = [_conjunct_result(ev, n) for n in nodes]
    order = [name for vs, _ in results for name, _ in vs]
    best = None
    for (label, _), (vs, hit) in zip(f.conjuncts, results):
        if hit is None:
            continue
        full = {name: 0 for name in order}
        full.update(hit)
        key = [full[n] for n in order]
        if best is None or key < best[0]:
            best = (key, full, label)
    if best is None:
        return ConsistentUpTo(bound, ev.caveat)
    return Falsified(best[1], best[2], level <= 1 and not ev.caveat, ev.caveat)


def replay(f: ArithFormula, assignment: Mapping[str, Real], verdict: Falsified, bound: int,
           sort_bounds: Optional[Mapping[str, int]] = None) -> bool:
    """Re-evaluate the falsified conjunct at the witness; True iff it is false there again."""
    ev = _Evaluator(f, assignment, bound, sort_bounds)
    node = dict(f.conjuncts)[verdict.conjunct]
    vs, body = leading_block(node, "A")
    return not ev.holds(body, {n: verdict.witness[n] for n, _ in vs})
