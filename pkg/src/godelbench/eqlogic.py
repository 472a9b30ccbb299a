"""Bounded equational consequence.

``saturate`` closes an axiom set under reflexivity, symmetry, transitivity, replacement and
substitution inside a finite universe of terms (at most ``max_term_size`` nodes over
``x_0 .. x_{max_vars-1}``). Every derived equation carries the step that produced it, and
``verify_step`` re-checks a step through the code-level predicates in :mod:`godelbench.codec`.

Within the bound the closure is exact; the unbounded least theory is only reached in the
limit, so a missing equation is never evidence of non-derivability.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Union

import numpy as np

from .algebras import AlgebraBatch, FiniteAlgebra, holds_in
from .codec import encode_equation, encode_term, is_replacement_instance, substitution_instance
from .terms import (Equation, Signature, Term, Var, check_term, enumerate_terms, positions,
                    replace_at, size, substitute, variables)

RULES = ("axiom", "refl", "sym", "trans", "repl", "subst")


@dataclass(frozen=True)
class AxiomSet:
    sig: Signature
    axioms: tuple[Equation, ...] = ()

    def __post_init__(self):
        seen: dict[Equation, None] = {}
        for e in self.axioms:
            check_term(e.left, self.sig)
            check_term(e.right, self.sig)
            seen.setdefault(e, None)
        object.__setattr__(self, "axioms", tuple(seen))


@dataclass(frozen=True)
class SaturationBudget:
    max_term_size: int = 5
    max_vars: int = 2
    max_iterations: int = 200_000

    def __post_init__(self):
        if min(self.max_term_size, self.max_vars, self.max_iterations) < 1:
            raise ValueError("all budget bounds must be >= 1")


@dataclass(frozen=True)
class Step:
    """How an equation was obtained. ``context`` is the term rewritten by ``repl``;
    ``subst`` lists the images of ``x_0, x_1, ...`` for ``subst``."""

    rule: str
    premises: tuple[Equation, ...] = ()
    context: Optional[Term] = None
    subst: tuple[Term, ...] = ()


@dataclass(frozen=True)
class SaturationResult:
    derived: frozenset[Equation]
    exhausted: bool
    traces: Mapping[Equation, Step]
    order: tuple[Equation, ...] = field(default=(), repr=False)
    iterations: int = 0

    def __contains__(self, e: Equation) -> bool:
        return e in self.derived

    def trace_of(self, e: Equation) -> list[tuple[Equation, Step]]:
        """Derivation of ``e`` as a list of (conclusion, step), premises first."""
        out: list[tuple[Equation, Step]] = []
        done: set[Equation] = set()
        stack: list[tuple[Equation, bool]] = [(e, False)]
        while stack:
            eq, expanded = stack.pop()
            if eq in done:
                continue
            if expanded:
                done.add(eq)
                out.append((eq, self.traces[eq]))
                continue
            stack.append((eq, True))
            for p in reversed(self.traces[eq].premises):
                if p not in done:
                    stack.append((p, False))
        return out


@dataclass(frozen=True)
class Derived:
    trace: tuple[tuple[Equation, Step], ...]


@dataclass(frozen=True)
class Unknown:
    reason: str = ""


@dataclass(frozen=True)
class CounterModel:
    algebra: FiniteAlgebra
    assignment: Mapping[int, int]


class _Saturator:
    def __init__(self, ax: AxiomSet, budget: SaturationBudget,
                 stop: Optional[Callable[[Equation], bool]] = None):
        self.sig, self.budget, self.stop = ax.sig, budget, stop
        self.terms = enumerate_terms(ax.sig, budget.max_term_size, budget.max_vars)
        self.ids = {t: i for i, t in enumerate(self.terms)}
        self.sizes = [size(t) for t in self.terms]
        self.occ: list[list[tuple[int, tuple]]] = [[] for _ in self.terms]
        for tid, t in enumerate(self.terms):
            for pos, sub in positions(t):
                self.occ[self.ids[sub]].append((tid, pos))
        self.var_counts = [self._count_vars(t) for t in self.terms]
        self.steps: dict[tuple[int, int], Step] = {}
        self.order: list[tuple[int, int]] = []
        self.queue: deque[tuple[int, int]] = deque()
        self.by_left: dict[int, list[int]] = {}
        self.by_right: dict[int, list[int]] = {}
        self.external: dict[Equation, Step] = {}
        self.hit = False
        self.axioms = ax.axioms

    @staticmethod
    def _count_vars(t: Term) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, u in positions(t):
            if isinstance(u, Var):
                out[u.index] = out.get(u.index, 0) + 1
        return out

    def eq(self, pair: tuple[int, int]) -> Equation:
        return Equation(self.terms[pair[0]], self.terms[pair[1]])

    def discover(self, pair: tuple[int, int], step: Step) -> None:
        if pair in self.steps:
            return
        self.steps[pair] = step
        self.order.append(pair)
        self.queue.append(pair)
        if self.stop is not None and self.stop(self.eq(pair)):
            self.hit = True

    def substitutions(self, lhs_vars: dict[int, int], rhs_vars: dict[int, int],
                      lsize: int, rsize: int):
        """Assignments var -> term id keeping both sides inside the size bound."""
        vs = sorted(set(lhs_vars) | set(rhs_vars))
        cap = self.budget.max_term_size
        chosen: list[int] = []

        def rec(k: int, ls: int, rs: int):
            if k == len(vs):
                yield dict(zip(vs, chosen))
                return
            v = vs[k]
            a, b = lhs_vars.get(v, 0), rhs_vars.get(v, 0)
            for tid, s in enumerate(self.sizes):
                grow = s - 1
                if ls + a * grow > cap or rs + b * grow > cap:
                    continue
                chosen.append(tid)
                yield from rec(k + 1, ls + a * grow, rs + b * grow)
                chosen.pop()

        yield from rec(0, lsize, rsize)

    def _subst_step(self, premise: Equation, mapping: dict[int, int]) -> tuple[Optional[tuple[int, int]], Step]:
        top = max(mapping) if mapping else -1
        images = tuple(self.terms[mapping[i]] if i in mapping else Var(i) for i in range(top + 1))
        left = substitute(premise.left, images)
        right = substitute(premise.right, images)
        pair = (self.ids.get(left), self.ids.get(right))
        step = Step("subst", (premise,), subst=images)
        if None in pair:
            return None, step
        return pair, step  # type: ignore[return-value]

    def seed(self) -> None:
        for e in self.axioms:
            pair = (self.ids.get(e.left), self.ids.get(e.right))
            if None in pair:
                self.external[e] = Step("axiom")
            else:
                self.discover(pair, Step("axiom"))  # type: ignore[arg-type]
        for i in range(len(self.terms)):
            self.discover((i, i), Step("refl"))
        # axioms outside the universe still have in-universe renamings/instances
        for e in self.external:
            for mapping in self.substitutions(self._count_vars(e.left), self._count_vars(e.right),
                                              size(e.left), size(e.right)):
                pair, step = self._subst_step(e, mapping)
                if pair is not None:
                    self.discover(pair, step)

    def run(self) -> SaturationResult:
        self.seed()
        iterations = 0
        while self.queue and iterations < self.budget.max_iterations and not self.hit:
            a, b = self.queue.popleft()
            iterations += 1
            self.by_left.setdefault(a, []).append(b)
            self.by_right.setdefault(b, []).append(a)
            if a == b:
                continue
            current = self.eq((a, b))
            self.discover((b, a), Step("sym", (current,)))
            for c in list(self.by_left.get(b, ())):
                self.discover((a, c), Step("trans", (current, self.eq((b, c)))))
            for z in list(self.by_right.get(a, ())):
                self.discover((z, b), Step("trans", (self.eq((z, a)), current)))
            for tid, pos in self.occ[a]:
                new = self.ids.get(replace_at(self.terms[tid], pos, self.terms[b]))
                if new is not None:
                    self.discover((tid, new), Step("repl", (current,), context=self.terms[tid]))
            for mapping in self.substitutions(self.var_counts[a], self.var_counts[b],
                                              self.sizes[a], self.sizes[b]):
                if all(isinstance(self.terms[t], Var) and self.terms[t].index == v
                       for v, t in mapping.items()):
                    continue
                pair, step = self._subst_step(current, mapping)
                if pair is not None:
                    self.discover(pair, step)
        order = tuple(self.eq(p) for p in self.order)
        traces: dict[Equation, Step] = dict(self.external)
        for p in self.order:
            traces[self.eq(p)] = self.steps[p]
        return SaturationResult(frozenset(order), not self.queue, traces, order, iterations)


def saturate(ax: AxiomSet, budget: SaturationBudget) -> SaturationResult:
    """Bounded closure of ``ax`` under the five equational rules.

    ``exhausted`` is True when the worklist emptied, i.e. the result is closed under every
    rule restricted to the term universe of the budget.
    """
    return _Saturator(ax, budget).run()


def derives(ax: AxiomSet, e: Equation, budget: SaturationBudget) -> Union[Derived, Unknown]:
    """Derived(trace) if ``e`` is reached within the budget; otherwise Unknown (never a denial).

    The term universe is widened to contain both sides of ``e``.
    """
    check_term(e.left, ax.sig)
    check_term(e.right, ax.sig)
    if e.left == e.right:
        return Derived(((e, Step("refl")),))
    vs = variables(e.left) | variables(e.right)
    widened = SaturationBudget(max(budget.max_term_size, size(e.left), size(e.right)),
                               max(budget.max_vars, max(vs) + 1 if vs else 1),
                               budget.max_iterations)
    result = _Saturator(ax, widened, stop=lambda d: d == e).run()
    if e in result.derived:
        return Derived(tuple(result.trace_of(e)))
    return Unknown("budget exhausted" if not result.exhausted else "not derivable within bound")


def verify_step(conclusion: Equation, step: Step, axioms: Iterable[Equation], sig: Signature
                ) -> bool:
    """Check one step from its premises alone, via code-level predicates."""
    if step.rule == "axiom":
        return conclusion in set(axioms)
    if step.rule == "refl":
        return conclusion.left == conclusion.right and not step.premises
    if len(step.premises) != (2 if step.rule == "trans" else 1):
        return False
    p = step.premises[0]
    if step.rule == "sym":
        return conclusion == Equation(p.right, p.left)
    if step.rule == "trans":
        q = step.premises[1]
        return p.right == q.left and conclusion == Equation(p.left, q.right)
    if step.rule == "repl":
        if step.context is None:
            return False
        return is_replacement_instance(encode_equation(conclusion), encode_term(step.context),
                                       encode_equation(p), sig)
    if step.rule == "subst":
        codes = [encode_term(t) for t in step.subst]
        return substitution_instance(encode_equation(p), codes, sig) == encode_equation(conclusion)
    return False


def verify_trace(trace: Iterable[tuple[Equation, Step]], axioms: Iterable[Equation],
                 sig: Signature) -> bool:
    """Every step is valid and uses only premises established earlier in the trace."""
    axioms = list(axioms)
    seen: set[Equation] = set()
    for concl, step in trace:
        if any(p not in seen for p in step.premises):
            return False
        if not verify_step(concl, step, axioms, sig):
            return False
        seen.add(concl)
    return True


def refutes(ax: AxiomSet, e: Equation, max_algebra_size: int, ceiling: int | None = None
            ) -> Union[CounterModel, Unknown]:
    """Search algebras of size 1..max_algebra_size (in enumeration order) for one that
    satisfies every axiom and falsifies ``e``."""
    if max_algebra_size < 1:
        raise ValueError("max_algebra_size must be >= 1")
    check_term(e.left, ax.sig)
    check_term(e.right, ax.sig)
    for k in range(1, max_algebra_size + 1):
        batch = AlgebraBatch(ax.sig, k, ceiling)
        models = batch.satisfying(ax.axioms)
        if len(models) == 0:
            continue
        sat = batch.satisfaction_matrix(e, models)
        bad = np.flatnonzero(~sat.all(axis=1))
        if len(bad):
            row = int(bad[0])
            alg = batch.algebra(int(models[row]))
            assignment = batch.assignment(e, int(np.flatnonzero(~sat[row])[0]))
            return CounterModel(alg, assignment)
    return Unknown(f"no counter-model up to size {max_algebra_size}")


def models_up_to(ax: AxiomSet, max_size: int, ceiling: int | None = None) -> list[FiniteAlgebra]:
    """All algebras of size <= max_size satisfying the axioms, in enumeration order."""
    out = []
    for k in range(1, max_size + 1):
        batch = AlgebraBatch(ax.sig, k, ceiling)
        out.extend(batch.algebra(int(i)) for i in batch.satisfying(ax.axioms))
    return out


def valid_in_all(algebras: Iterable[FiniteAlgebra], e: Equation) -> bool:
    return all(holds_in(a, e) for a in algebras)
