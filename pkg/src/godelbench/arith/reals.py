"""Reals: total membership procedures on the naturals.

An arbitrary subset of ω cannot be stored, so parameters take one of a few executable forms.
``TheoryApprox`` reals stand for a theory through a bounded procedure; their ``polarity`` says
whether ``True`` answers (``under``) or ``False`` answers (``over``) are the trustworthy ones.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Optional

from ..algebras import AlgebraBatch
from ..codec import decode_equation, decode_formula, is_eq_code, is_formula_code
from ..eqlogic import AxiomSet, SaturationBudget, saturate
from ..kripke import LogicPresentation, finite_frames_of, validates_all
from ..terms import App, Equation, Signature, Term, Var, size

Polarity = Literal["under", "over"]


class Real:
    """Base class. Subclasses implement ``contains``."""

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def __contains__(self, n: int) -> bool:
        return n >= 0 and self.contains(n)

    def __call__(self, n: int) -> bool:
        return n in self

    def members_upto(self, bound: int) -> Optional[list[int]]:
        """Sorted members ``<= bound`` when cheaply enumerable, else None."""
        return None

    def uncertain(self, n: int, answer: bool) -> bool:
        """Whether ``answer`` (the result of ``n in self``) might be wrong for the intended set."""
        return False

    def prefix(self, length: int) -> str:
        return "".join("1" if i in self else "0" for i in range(length))


@dataclass(frozen=True, eq=False)
class FiniteSet(Real):
    codes: frozenset[int]

    def __init__(self, codes: Iterable[int] = ()):
        object.__setattr__(self, "codes", frozenset(codes))

    def contains(self, n: int) -> bool:
        return n in self.codes

    def members_upto(self, bound: int) -> list[int]:
        return sorted(c for c in self.codes if c <= bound)


@dataclass(frozen=True, eq=False)
class Cofinite(Real):
    """Everything except ``excluded``."""

    excluded: frozenset[int]

    def __init__(self, excluded: Iterable[int] = ()):
        object.__setattr__(self, "excluded", frozenset(excluded))

    def contains(self, n: int) -> bool:
        return n not in self.excluded


@dataclass(frozen=True, eq=False)
class ExplicitPrefix(Real):
    """Bit ``n`` of ``bits`` for ``n < len(bits)``, ``default`` beyond."""

    bits: str
    default: bool = False

    def __post_init__(self):
        if set(self.bits) - {"0", "1"}:
            raise ValueError("prefix must be a 0/1 string")

    def contains(self, n: int) -> bool:
        return self.bits[n] == "1" if n < len(self.bits) else self.default


@dataclass(frozen=True, eq=False)
class RecursiveSet(Real):
    """Membership given by a total decidable predicate, e.g. "all equation codes"."""

    predicate: Callable[[int], bool]
    name: str = "recursive"

    def contains(self, n: int) -> bool:
        return bool(self.predicate(n))


def all_equations(sig: Signature) -> RecursiveSet:
    return RecursiveSet(lambda n: is_eq_code(n, sig), "all-equations")


def all_formulas(tense: bool = True) -> RecursiveSet:
    return RecursiveSet(lambda n: is_formula_code(n, tense), "all-formulas")


@dataclass(frozen=True, eq=False)
class JoinReal(Real):
    left: Real
    right: Real

    def contains(self, n: int) -> bool:
        return (n // 2) in (self.right if n % 2 else self.left)

    def uncertain(self, n: int, answer: bool) -> bool:
        return (self.right if n % 2 else self.left).uncertain(n // 2, answer)


def join(a: Real, b: Real) -> JoinReal:
    """``A ⊕ B``: ``2n ∈ A⊕B`` iff ``n ∈ A``; ``2n+1 ∈ A⊕B`` iff ``n ∈ B``."""
    return JoinReal(a, b)


class TheoryApprox(Real):
    """A theory seen through a bounded procedure."""

    polarity: Polarity
    _scanned: tuple[int, list[int]] = (-1, [])

    def members_upto(self, bound: int) -> list[int]:
        """Members ``<= bound`` by scanning; the longest scan so far is kept."""
        done, found = self._scanned
        if bound > done:
            found = found + [n for n in range(done + 1, bound + 1) if n in self]
            self._scanned = (bound, found)
        return [n for n in found if n <= bound]

    def uncertain(self, n: int, answer: bool) -> bool:
        return answer != (self.polarity == "under")


class _Memo:
    def __init__(self):
        self._lock = threading.Lock()
        self._values: dict = {}

    def get(self, key, compute):
        hit = self._values.get(key, self)
        if hit is not self:
            return hit
        value = compute()
        with self._lock:
            self._values.setdefault(key, value)
        return value


def _rename_apart(e: Equation) -> Equation:
    """Rename variables to ``x_0, x_1, ...`` in order of first occurrence."""
    names: dict[int, int] = {}

    def walk(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(names.setdefault(t.index, len(names)))
        return App(t.symbol, tuple(walk(a) for a in t.args))

    left = walk(e.left)
    return Equation(left, walk(e.right))


class EquationalTheoryApprox(TheoryApprox):
    """The equational theory of ``axioms``.

    ``under``: ``e`` is derived by saturation over terms as large as ``e`` (at least the
    budget's size) after renaming its variables to ``x_0..``. Derivability is invariant under
    renaming, so only ``True`` answers are certain.

    ``over``: ``e`` holds in every model of the axioms with at most ``model_size`` elements;
    only ``False`` answers are certain.
    """

    def __init__(self, axioms: AxiomSet, polarity: Polarity = "under",
                 budget: SaturationBudget = SaturationBudget(3, 2), model_size: int = 2):
        self.axioms, self.polarity, self.budget, self.model_size = axioms, polarity, budget, model_size
        self.sig = axioms.sig
        self._saturations = _Memo()
        self._answers = _Memo()
        self._models: Optional[list] = None

    def _saturated(self, max_size: int, num_vars: int) -> frozenset:
        b = SaturationBudget(max(self.budget.max_term_size, max_size),
                             max(self.budget.max_vars, num_vars), self.budget.max_iterations)
        key = (b.max_term_size, b.max_vars)
        return self._saturations.get(key, lambda: saturate(self.axioms, b).derived)

    def _model_batches(self):
        if self._models is None:
            batches = []
            for k in range(1, self.model_size + 1):
                batch = AlgebraBatch(self.sig, k)
                batches.append((batch, batch.satisfying(self.axioms.axioms)))
            self._models = batches
        return self._models

    def _compute(self, n: int) -> bool:
        if not is_eq_code(n, self.sig):
            return False
        e = decode_equation(n, self.sig)
        if self.polarity == "under":
            r = _rename_apart(e)
            nv = len({*_vars(r.left), *_vars(r.right)})
            return r in self._saturated(max(size(r.left), size(r.right)), max(nv, 1))
        for batch, rows in self._model_batches():
            if len(rows) and not batch.satisfaction_matrix(e, rows).all():
                return False
        return True

    def contains(self, n: int) -> bool:
        return self._answers.get(n, lambda: self._compute(n))


def _vars(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= _vars(a)
    return out


class ModalTheoryApprox(TheoryApprox):
    """The normal (tense) logic of ``logic``.

    ``under``: a proof is found by :func:`~godelbench.hilbert.search_proof` within
    ``proof_length`` lines of size at most ``formula_size``.

    ``over``: the formula is valid on every frame with at most ``frame_size`` points that
    validates the logic. This set is itself a normal logic, so it satisfies every closure
    condition exactly; only its ``False`` answers are certain.
    """

    def __init__(self, logic: LogicPresentation, polarity: Polarity = "over",
                 frame_size: int = 2, proof_length: int = 4, formula_size: int = 5):
        self.logic, self.polarity = logic, polarity
        self.tense = logic.tense
        self.frame_size, self.proof_length, self.formula_size = frame_size, proof_length, formula_size
        self._answers = _Memo()
        self._frames = None

    @property
    def frames(self):
        if self._frames is None:
            self._frames = finite_frames_of(self.logic, self.frame_size)
        return self._frames

    def _compute(self, n: int) -> bool:
        if not is_formula_code(n, self.tense):
            return False
        if self.polarity == "over":
            f = decode_formula(n, self.tense)
            return all(validates_all(fr, (f,)) for fr in self.frames)
        from ..hilbert import Found, search_proof
        return isinstance(search_proof(self.logic, None, n, self.proof_length, self.formula_size),
                          Found)

    def contains(self, n: int) -> bool:
        return self._answers.get(n, lambda: self._compute(n))

    def proofs(self, extra: int, goal: int):
        """Proofs of ``goal`` in ``logic + extra`` found within the search bounds (0 or 1)."""
        from ..hilbert import Found, search_proof
        r = search_proof(self.logic, extra, goal, self.proof_length, self.formula_size)
        return [r.proof] if isinstance(r, Found) else []
