"""Seeded random inputs shared by several test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from godelbench.eqlogic import AxiomSet
from godelbench.formulas import BOT, And, Box, Implies, Prop
from godelbench.parsing import parse_equation
from godelbench.terms import Equation, Signature, enumerate_terms

BIN = Signature((2,))
ASSOC = parse_equation("(x0*x1)*x2 = x0*(x1*x2)")
COMM = parse_equation("x0*x1 = x1*x0")


def random_axiom_sets(count: int = 20, seed: int = 2024, max_axioms: int = 2,
                      max_size: int = 3, num_vars: int = 3) -> list[AxiomSet]:
    rng = random.Random(seed)
    terms = enumerate_terms(BIN, max_size, num_vars)
    out = []
    for _ in range(count):
        k = rng.randint(1, max_axioms)
        eqs = tuple(Equation(rng.choice(terms), rng.choice(terms)) for _ in range(k))
        out.append(AxiomSet(BIN, eqs))
    return out


def random_formula(rng: random.Random, depth: int, num_props: int = 2, tense: bool = True):
    if depth == 0 or rng.random() < 0.25:
        return BOT if rng.random() < 0.1 else Prop(rng.randrange(num_props))
    kind = rng.choice(("and", "imp", "box"))
    if kind == "box":
        return Box(rng.randrange(2) if tense else 0, random_formula(rng, depth - 1, num_props, tense))
    a = random_formula(rng, depth - 1, num_props, tense)
    b = random_formula(rng, depth - 1, num_props, tense)
    return And(a, b) if kind == "and" else Implies(a, b)


def random_formulas(count: int = 100, seed: int = 7, depth: int = 3, tense: bool = True) -> list:
    rng = random.Random(seed)
    return [random_formula(rng, depth, tense=tense) for _ in range(count)]


formula_st = st.recursive(
    st.one_of(st.builds(Prop, st.integers(0, 3)), st.just(BOT)),
    lambda sub: st.one_of(st.builds(And, sub, sub), st.builds(Implies, sub, sub),
                          st.builds(Box, st.integers(0, 1), sub)),
    max_leaves=8)
