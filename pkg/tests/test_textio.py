import json

import pytest

from godelbench import textio
from godelbench.arith import (Cofinite, EquationalTheoryApprox, ExplicitPrefix, FiniteSet,
                              ModalTheoryApprox)
from godelbench.codec import encode_formula
from godelbench.errors import ParseError
from godelbench.hilbert import (MP, BaseAxiomInstance, ExtraAxiomInstance, Found, KInstance, Nec,
                                Tautology, TenseDuality, check_proof, make_subst, search_proof)
from godelbench.kripke import LogicPresentation
from godelbench.formulas import BOT, Box, Prop
from godelbench.parsing import parse_formula
from godelbench.terms import Signature


def test_signature():
    assert textio.parse_signature("2,1") == Signature((2, 1))
    assert textio.parse_signature("") == Signature(())
    with pytest.raises(ParseError):
        textio.parse_signature("2,x")


def test_axiom_and_logic_files(tmp_path):
    p = tmp_path / "ax.eq"
    p.write_text("# commutativity\nx0*x1 = x1*x0\n\nf1(x0) = x0  # unary\n")
    ax = textio.load_axioms(p)
    assert ax.sig == Signature((2, 1))
    assert len(ax.axioms) == 2
    lg = tmp_path / "t.lg"
    lg.write_text("box0 p0 -> p0\n")
    logic = textio.load_logic(lg, tense=True)
    assert logic == LogicPresentation((parse_formula("box0 p0 -> p0"),), True)


@pytest.mark.parametrize("j", [Tautology(), KInstance(1), TenseDuality(0), MP(2, 0), Nec(1, 1),
                               ExtraAxiomInstance(()),
                               ExtraAxiomInstance(make_subst({0: BOT, 3: Box(1, Prop(2))})),
                               BaseAxiomInstance(2, make_subst({1: Prop(0)}))])
def test_justification_text_roundtrip(j):
    assert textio.parse_justification(textio.format_justification(j)) == j


def test_proof_text_roundtrip():
    k = LogicPresentation(())
    goal = encode_formula(parse_formula("box0 p0 -> box0 p0"))
    r = search_proof(k, None, goal, 4, 7)
    assert isinstance(r, Found)
    text = textio.format_proof(r.proof)
    back = textio.parse_proof("# a comment\n" + text + "\n")
    assert back == r.proof
    assert check_proof(k, None, back, goal)


def test_proof_text_errors():
    with pytest.raises(ParseError):
        textio.parse_proof("1: p0 -> p0 [taut]")
    with pytest.raises(ParseError):
        textio.parse_proof("0: p0 -> p0 taut")
    with pytest.raises(ParseError):
        textio.parse_proof("0: p0 -> p0 [mp 1]")
    with pytest.raises(ParseError):
        textio.parse_proof("0: p0 -> p0 [extra q0:=p1]")


def _real(tmp_path, rec):
    p = tmp_path / "r.json"
    p.write_text(json.dumps(rec))
    return textio.load_real(p)


def test_real_records(tmp_path):
    assert isinstance(_real(tmp_path, {"kind": "finite", "codes": [1, 2]}), FiniteSet)
    assert isinstance(_real(tmp_path, {"kind": "cofinite"}), Cofinite)
    assert _real(tmp_path, {"kind": "prefix", "bits": "101"}) .prefix(4) == "1010"
    assert isinstance(_real(tmp_path, {"kind": "prefix", "bits": "1"}), ExplicitPrefix)
    th = _real(tmp_path, {"kind": "theory", "axioms": ["x0*x1 = x1*x0"]})
    assert isinstance(th, EquationalTheoryApprox) and th.polarity == "under"
    lg = _real(tmp_path, {"kind": "logic", "axioms": ["box0 p0 -> p0"], "tense": True})
    assert isinstance(lg, ModalTheoryApprox) and lg.polarity == "over" and lg.tense
    assert 5 in _real(tmp_path, {"kind": "equations"})


def test_real_record_errors(tmp_path):
    for rec in ({"kind": "nope"}, {"kind": "theory", "polarity": "sideways"}, [1, 2]):
        with pytest.raises(ParseError):
            _real(tmp_path, rec)
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        textio.load_real(p)
