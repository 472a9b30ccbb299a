import pytest

from godelbench.algebras import holds_in
from godelbench.eqlogic import (AxiomSet, CounterModel, Derived, SaturationBudget, Step, Unknown,
                                derives, models_up_to, refutes, saturate, verify_step,
                                verify_trace)
from godelbench.errors import SignatureMismatch
from godelbench.parsing import parse_equation, parse_term
from godelbench.terms import Equation

from corpus import ASSOC, BIN, COMM, random_axiom_sets


def test_budget_validation():
    with pytest.raises(ValueError):
        SaturationBudget(0, 2)


def test_empty_axioms_give_only_identities():
    r = saturate(AxiomSet(BIN, ()), SaturationBudget(3, 2))
    assert r.exhausted
    assert all(e.left == e.right for e in r.derived)
    # [DERIVED] terms of size <= 3 in two variables: 2 variables + 4 products
    assert len(r.derived) == 6


def test_commutativity_closure():
    r = saturate(AxiomSet(BIN, (COMM,)), SaturationBudget(3, 2))
    assert parse_equation("x1*x0 = x0*x1") in r
    assert parse_equation("x0*x1 = x0*x1") in r
    assert parse_equation("x0*x1 = x0") not in r


def test_every_trace_verifies():
    for ax in random_axiom_sets(count=6, seed=11):
        r = saturate(ax, SaturationBudget(4, 2))
        for e in list(r.order)[:200]:
            assert verify_trace(r.trace_of(e), ax.axioms, BIN)


def test_derives_returns_checkable_trace():
    ax = AxiomSet(BIN, (ASSOC, COMM))
    goal = parse_equation("x0*(x1*x2) = x1*(x0*x2)")
    r = derives(ax, goal, SaturationBudget(5, 3))
    assert isinstance(r, Derived)
    assert r.trace[-1][0] == goal
    assert verify_trace(r.trace, ax.axioms, BIN)


def test_derives_never_denies():
    r = derives(AxiomSet(BIN, (COMM,)), parse_equation("x0 = x1"), SaturationBudget(3, 2))
    assert isinstance(r, Unknown)


def test_derives_checks_signature():
    with pytest.raises(SignatureMismatch):
        derives(AxiomSet(BIN, ()), parse_equation("f1(x0) = x0"), SaturationBudget(3, 2))


def test_verify_step_rejects_bad_steps():
    e = parse_equation("x0*x1 = x1*x0")
    assert not verify_step(e, Step("sym", (e,)), [], BIN)
    assert verify_step(e.flipped(), Step("sym", (e,)), [], BIN)
    assert not verify_step(e, Step("axiom"), [], BIN)
    ctx = parse_term("(x0*x1)*x0")
    good = Equation(ctx, parse_term("(x1*x0)*x0"))
    assert verify_step(good, Step("repl", (e,), context=ctx), [], BIN)
    assert not verify_step(Equation(ctx, parse_term("(x1*x0)*(x1*x0)")),
                           Step("repl", (e,), context=ctx), [], BIN)
    assert not verify_step(good, Step("magic", (e,)), [], BIN)


def test_verify_trace_requires_premises_first():
    e = parse_equation("x0*x1 = x1*x0")
    trace = [(e.flipped(), Step("sym", (e,))), (e, Step("axiom"))]
    assert not verify_trace(trace, [e], BIN)
    assert verify_trace(trace[::-1], [e], BIN)


def test_refutes_left_projection():
    r = refutes(AxiomSet(BIN, (ASSOC,)), COMM, 2)
    assert isinstance(r, CounterModel)
    assert r.algebra.tables == ((0, 0, 1, 1),)
    assert not holds_in(r.algebra, COMM)
    assert holds_in(r.algebra, ASSOC)


def test_refutes_unknown_for_consequences():
    ax = AxiomSet(BIN, (COMM,))
    assert isinstance(refutes(ax, parse_equation("x1*x0 = x0*x1"), 3), Unknown)
    with pytest.raises(ValueError):
        refutes(ax, COMM, 0)


def test_models_up_to():
    ms = models_up_to(AxiomSet(BIN, (parse_equation("x0 = x1"),)), 3)
    assert [m.size for m in ms] == [1]


def test_sound_and_consistent_on_corpus():
    for ax in random_axiom_sets(count=8, seed=5):
        models = models_up_to(ax, 2)
        for e in saturate(ax, SaturationBudget(4, 2)).derived:
            assert all(holds_in(m, e) for m in models)
