"""Parameter reals, arithmetical formulas over a fixed predicate library, the three
definability formulas, classification, and bounded evaluation."""

from .builders import build_fmp_formula, build_interval_formula, build_pretab_formula
from .evaluate import ConsistentUpTo, Falsified, WitnessedUpTo, eval_bounded, replay
from .reals import (Cofinite, EquationalTheoryApprox, ExplicitPrefix, FiniteSet, JoinReal,
                    ModalTheoryApprox, Real, RecursiveSet, TheoryApprox, all_equations,
                    all_formulas, join)
from .syntax import ArithFormula, classify, dump, prenex

__all__ = [
    "ArithFormula", "Cofinite", "ConsistentUpTo", "EquationalTheoryApprox", "ExplicitPrefix",
    "Falsified", "FiniteSet", "JoinReal", "ModalTheoryApprox", "Real", "RecursiveSet",
    "TheoryApprox", "WitnessedUpTo", "all_equations", "all_formulas", "build_fmp_formula",
    "build_interval_formula", "build_pretab_formula", "classify", "dump", "eval_bounded",
    "join", "prenex", "replay",
]
