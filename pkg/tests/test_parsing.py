import pytest
from hypothesis import given

from godelbench.errors import ParseError, SignatureMismatch
from godelbench.formulas import BOT, And, Box, Implies, Prop, neg
from godelbench.frames import FiniteFrame
from godelbench.parsing import (format_equation, format_formula, format_frame, format_term,
                                infer_signature, parse_equation, parse_formula, parse_frame,
                                parse_term)
from godelbench.terms import App, Signature, Var, enumerate_terms

from corpus import formula_st


def test_term_syntax():
    assert parse_term("x0*x1") == App(0, (Var(0), Var(1)))
    assert parse_term("x0*x1*x2") == parse_term("(x0*x1)*x2")
    assert parse_term("f1(x0, f2())") == App(1, (Var(0), App(2, ())))


def test_term_roundtrip():
    for t in enumerate_terms(Signature((2, 1)), 5, 2):
        assert parse_term(format_term(t)) == t


def test_equation_syntax():
    e = parse_equation("x0 * x1 ≈ x1 * x0")
    assert format_equation(e) == "x0 * x1 = x1 * x0"
    with pytest.raises(ParseError):
        parse_equation("x0 * x1")
    with pytest.raises(ParseError):
        parse_equation("x0 = = x1")


def test_signature_checks():
    with pytest.raises(SignatureMismatch):
        parse_term("f0(x0)", Signature((2,)))
    assert infer_signature([parse_term("f1(x0*x0)")]) == Signature((2, 1))
    with pytest.raises(ParseError):
        infer_signature([parse_term("f1(x0)"), parse_term("f1(x0, x1)")])


def test_formula_syntax():
    assert parse_formula("box0 p0 -> p0") == Implies(Box(0, Prop(0)), Prop(0))
    assert parse_formula("p0 -> p1 -> p2") == Implies(Prop(0), Implies(Prop(1), Prop(2)))
    assert parse_formula("p0 & p1 -> p2") == Implies(And(Prop(0), Prop(1)), Prop(2))
    assert parse_formula("~p0") == neg(Prop(0)) == Implies(Prop(0), BOT)
    assert parse_formula("box p0") == Box(0, Prop(0))
    with pytest.raises(ParseError):
        parse_formula("p0 ->")
    with pytest.raises(ParseError):
        parse_formula("q0")


@given(formula_st)
def test_formula_roundtrip(f):
    assert parse_formula(format_formula(f)) == f


def test_frame_records():
    fr = parse_frame('{"size": 2, "edges": [[0, 1]]}')
    assert fr == FiniteFrame(2, 0b0010)
    assert parse_frame(format_frame(fr)) == fr
    for bad in ('{"edges": []}', '{"size": 1, "edges": [[0, 1]]}', "nope", '{"size": 0}'):
        with pytest.raises(ParseError):
            parse_frame(bad)
