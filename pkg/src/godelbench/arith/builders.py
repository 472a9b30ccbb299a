"""The three definability formulas: intervals of equational theories, fmp spans, and
pretabular extensions.

Each formula takes a single real parameter ``A``. Where two parameters are needed they are
joined, so ``i ∈ Φ_0`` is written ``2i ∈ A`` and ``i ∈ Φ_1`` is written ``2i+1 ∈ A``.
"""

from __future__ import annotations

from ..codec import TAG_BOX0, TAG_IMP, encode_formula
from ..formulas import BOT
from ..hilbert import TabTable
from ..terms import Signature
from .reals import Real, join
from .syntax import (ArithFormula, Atom, C, Fst, Iff, Imp, Lin, Mem, Node, Or, PairOf, Snd,
                     TabOf, V, conj, exists, forall)

BINARY = Signature((2,))


def _even(x: str):
    return Lin(2, 0, V(x))


def _odd(x: str):
    return Lin(2, 1, V(x))


def build_interval_formula(phi0: Real, phi1: Real, sig: Signature = BINARY,
                           free: str = "Phi") -> ArithFormula:
    """Π⁰₁ formula in the set variable ``free`` defining the interval ``[Φ_0, Φ_1]`` of
    equational theories over ``sig``.

    Conjuncts: codes are equations; reflexivity; symmetry; transitivity; closure under
    replacement; closure under substitution; ``Φ_0 ⊆ Φ ⊆ Φ_1``.
    """
    X = free
    conjuncts = (
        ("eq", forall([("i", "eq")], Imp(Mem(X, V("i")), Atom("IsEq", (V("i"),))))),
        ("refl", forall([("s", "term")],
                        Imp(Atom("IsTerm", (V("s"),)), Mem(X, PairOf(V("s"), V("s")))))),
        ("sym", forall([("i2", "eq")],
                       Imp(Mem(X, V("i2")), Mem(X, PairOf(Snd(V("i2")), Fst(V("i2"))))))),
        ("trans", forall([("i3", "eq"), ("j3", "eq")],
                         Imp(conj(Mem(X, V("i3")), Mem(X, V("j3")),
                                  Atom("CodeEq", (Snd(V("i3")), Fst(V("j3"))))),
                             Mem(X, PairOf(Fst(V("i3")), Snd(V("j3"))))))),
        ("repl", forall([("i4", "eq"), ("j4", "term"), ("k4", "eq")],
                        Imp(conj(Atom("IsTerm", (V("j4"),)), Mem(X, V("k4")),
                                 Atom("Rep", (V("i4"), V("j4"), V("k4")))),
                            Mem(X, V("i4"))))),
        ("subst", forall([("i5", "eq"), ("j5", "eq"), ("s5", "subst")],
                         Imp(conj(Mem(X, V("j5")), Atom("SubstInst", (V("i5"), V("j5"), V("s5")))),
                             Mem(X, V("i5"))))),
        ("bounds", forall([("i6", "eq")],
                          conj(Imp(Mem("A", _even("i6")), Mem(X, V("i6"))),
                               Imp(Mem(X, V("i6")), Mem("A", _odd("i6")))))),
    )
    return ArithFormula(conjuncts, (X,), {"A": join(phi0, phi1)}, {"sig": sig})


def _alpha(X: str, base: str, tense: bool, in_base) -> list[tuple[str, Node]]:
    """Π⁰₁ conditions for ``X`` to be a normal (tense) logic containing the base logic.

    The conjunct list is a convention of this package: formulas only; base ⊆ X; tautologies,
    K and (tense) duality instances; modus ponens; necessitation per box; uniform substitution.
    """
    imp = "k"
    parts: list[tuple[str, Node]] = [
        ("alpha.fml", forall([("a1", "fml")], Imp(Mem(X, V("a1")), Atom("IsFml", (V("a1"),))))),
        ("alpha.base", forall([("a2", "fml")], Imp(Mem(base, in_base("a2")), Mem(X, V("a2"))))),
        ("alpha.axioms", forall([("a3", "fml")],
                                Imp(Atom("NormalAxiom", (V("a3"),)), Mem(X, V("a3"))))),
        ("alpha.mp", forall([(imp, "fml")],
                            Imp(conj(Mem(X, V(imp)), Atom("CodeEq", (Fst(V(imp)), C(TAG_IMP))),
                                     Mem(X, Fst(Snd(V(imp))))),
                                Mem(X, Snd(Snd(V(imp))))))),
    ]
    for slot in ((0, 1) if tense else (0,)):
        parts.append((f"alpha.nec{slot}",
                      forall([(f"a{5 + slot}", "fml")],
                             Imp(Mem(X, V(f"a{5 + slot}")),
                                 Mem(X, PairOf(C(TAG_BOX0 + slot), V(f"a{5 + slot}")))))))
    parts.append(("alpha.subst",
                  forall([("a8", "fml"), ("b8", "fml"), ("s8", "subst")],
                         Imp(conj(Mem(X, V("a8")), Atom("FSubstInst", (V("b8"), V("a8"), V("s8")))),
                             Mem(X, V("b8"))))))
    return parts


def build_fmp_formula(L0: Real, L: Real, tense: bool = False, free: str = "Lp") -> ArithFormula:
    """``α ∧ β``: ``free`` is a normal extension of ``L0`` with the same finite frames as ``L``.

    β reads: for every frame code ``f``, ``f`` validates all of ``free`` iff it validates all
    of ``L``. Π⁰₂ in the parameter ``L0 ⊕ L``.
    """
    X = free
    beta = forall([("f", "frame")], Imp(
        Atom("IsFrame", (V("f"),)),
        Iff(forall([("i", "fml")], Imp(Mem(X, V("i")), Atom("Val", (V("f"), V("i"))))),
            forall([("j", "fml")], Imp(Mem("A", _odd("j")), Atom("Val", (V("f"), V("j"))))))))
    conjuncts = tuple(_alpha(X, "A", tense, _even)) + (("beta", beta),)
    return ArithFormula(conjuncts, (X,), {"A": join(L0, L)}, {"tense": tense})


def build_pretab_formula(L: Real, tabs: TabTable, free: str = "Lp") -> ArithFormula:
    """Π⁰₂ formula in ``free``: a tense extension of ``L`` every formula of which is a theorem,
    or yields some ``tab_n``, or yields ``⊥`` when added as an axiom."""
    X = free
    b = encode_formula(BOT)
    discharge = forall([("i", "fml")], Imp(
        Atom("IsFml", (V("i"),)),
        Or((Mem(X, V("i")),
            exists([("p", "proof"), ("n", "tab")],
                   Atom("Proof", (V("i"), V("p"), TabOf(V("n"))), setvar=X)),
            exists([("q", "proof")], Atom("Proof", (V("i"), V("q"), C(b)), setvar=X))))))
    conjuncts = tuple(_alpha(X, "A", True, V)) + (("pretab", discharge),)
    return ArithFormula(conjuncts, (X,), {"A": L}, {"tense": True, "tabs": dict(tabs.codes)},
                        {"b": b})
