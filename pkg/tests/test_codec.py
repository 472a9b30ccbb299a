import pytest
from hypothesis import given, strategies as st

from godelbench.codec import (canonical_frame_code, decode_equation, decode_formula, decode_frame,
                              decode_term, encode_equation, encode_formula, encode_frame,
                              encode_term, is_eq_code, is_formula_code, is_frame_code,
                              is_replacement_instance, is_substitution_instance, is_term_code,
                              substitution_instance)
from godelbench.errors import MalformedCode
from godelbench.formulas import Box, Prop
from godelbench.frames import FiniteFrame
from godelbench.pairing import pair, seq, unpair, unseq
from godelbench.parsing import parse_equation, parse_formula, parse_term
from godelbench.terms import App, Equation, Signature, Var, enumerate_terms

from corpus import formula_st
from oracles import all_terms, diagonal_pair, one_replacements

BIN = Signature((2,))
BIN_UN = Signature((2, 1))


# -- pairing -------------------------------------------------------------------------------

def test_pair_matches_diagonal_walk():
    for a in range(25):
        for b in range(25):
            assert pair(a, b) == diagonal_pair(a, b)


def test_pair_is_bijective_on_an_initial_segment():
    seen = {unpair(c) for c in range(5000)}
    assert len(seen) == 5000
    assert all(pair(*ab) < 5000 for ab in seen)


@given(st.integers(0, 10**30), st.integers(0, 10**30))
def test_unpair_inverts_pair_on_big_numbers(a, b):
    assert unpair(pair(a, b)) == (a, b)


@given(st.lists(st.integers(0, 10**6), max_size=8))
def test_seq_roundtrip(xs):
    assert unseq(seq(xs)) == xs


def test_every_natural_is_a_sequence_code():
    assert all(seq(unseq(c)) == c for c in range(3000))


def test_pairing_rejects_negatives():
    with pytest.raises(ValueError):
        pair(-1, 0)
    with pytest.raises(ValueError):
        unpair(-3)


# -- terms and equations -------------------------------------------------------------------

def _hand_term_code(t) -> int:
    """The term code written out with the diagonal-walk pairing."""
    if isinstance(t, Var):
        return 2 * t.index
    s = 0
    for c in reversed([_hand_term_code(a) for a in t.args]):
        s = diagonal_pair(c, s) + 1
    return 2 * diagonal_pair(t.symbol, s) + 1


# [DERIVED] from _hand_term_code above, then frozen
FROZEN_TERMS = {"x0": 0, "x1": 2, "f0(x0)": 5, "x0*x0": 19, "x1*x0": 89, "x0*x1": 271}


@pytest.mark.parametrize("text,code", sorted(FROZEN_TERMS.items()))
def test_frozen_term_codes(text, code):
    t = parse_term(text)
    assert _hand_term_code(t) == code
    assert encode_term(t) == code


def test_frozen_equation_codes():
    # [DERIVED] pair of the two term codes via the diagonal walk
    assert diagonal_pair(19, 19) == 760
    assert encode_equation(parse_equation("x0*x0 = x0*x0")) == 760
    assert encode_equation(parse_equation("x0*x1 = x1*x0")) == diagonal_pair(271, 89) == 65069
    assert encode_equation(parse_equation("x0 = x0")) == 0


def test_enumerator_agrees_with_oracle():
    ours = enumerate_terms(BIN_UN, 6, 3)
    ref = all_terms((2, 1), 6, 3)
    assert len(ours) == len(set(ours))
    assert set(ours) == set(ref)


def test_term_roundtrip_and_injectivity():
    ts = enumerate_terms(BIN_UN, 6, 3)
    codes = [encode_term(t) for t in ts]
    assert len(set(codes)) == len(codes)
    assert all(decode_term(c, BIN_UN) == t for c, t in zip(codes, ts))


def test_decode_checks_arity():
    c = encode_term(App(0, (Var(0),)))  # f0 applied to one argument
    assert not is_term_code(c, BIN)
    with pytest.raises(MalformedCode):
        decode_term(c, BIN)
    assert is_term_code(c, Signature((1,)))


def test_is_term_code_scan():
    # [DERIVED] a code is a term code iff decoding succeeds; decode is total on even codes
    for c in range(0, 400):
        if c % 2 == 0:
            assert is_term_code(c, BIN)
        if is_term_code(c, BIN):
            assert encode_term(decode_term(c, BIN)) == c


def test_equation_roundtrip():
    ts = enumerate_terms(BIN, 3, 2)
    for a in ts:
        for b in ts:
            e = Equation(a, b)
            c = encode_equation(e)
            assert is_eq_code(c, BIN)
            assert decode_equation(c, BIN) == e


def test_replacement_predicate_matches_oracle_sample():
    ts = enumerate_terms(BIN, 3, 2)
    for t in ts:
        for s in ts:
            for s2 in ts[:4]:
                rule = encode_equation(Equation(s, s2))
                expected = {encode_equation(Equation(t, r)) for r in one_replacements(t, s, s2)}
                for r in ts:
                    c = encode_equation(Equation(t, r))
                    assert is_replacement_instance(c, encode_term(t), rule, BIN) == (c in expected)


def test_replacement_is_total_on_junk():
    assert not is_replacement_instance(3, 5, 7, BIN)
    assert not is_replacement_instance(-1, 0, 0, BIN)


def test_substitution_instance():
    e = parse_equation("x0*x1 = x1*x0")
    s = [encode_term(parse_term("x1*x1")), encode_term(parse_term("x0"))]
    out = substitution_instance(encode_equation(e), s, BIN)
    assert decode_equation(out, BIN) == parse_equation("(x1*x1)*x0 = x0*(x1*x1)")
    assert is_substitution_instance(out, encode_equation(e), seq(s), BIN)
    assert not is_substitution_instance(out + 1, encode_equation(e), seq(s), BIN)
    # the empty substitution leaves the equation alone
    assert is_substitution_instance(encode_equation(e), encode_equation(e), 0, BIN)


# -- formulas ------------------------------------------------------------------------------

# [DERIVED] pair(tag, payload) with tags p=0, bot=1, and=2, imp=3, box0=4, box1=5
FROZEN_FORMULAS = {"p0": 0, "p1": 2, "bot": 1, "box0 p0": 10, "box0 bot": 16,
                   "box0 p0 -> p0": 1766}


@pytest.mark.parametrize("text,code", sorted(FROZEN_FORMULAS.items()))
def test_frozen_formula_codes(text, code):
    assert encode_formula(parse_formula(text)) == code


def test_hand_formula_code():
    box = diagonal_pair(4, 0)
    assert diagonal_pair(3, diagonal_pair(box, 0)) == 1766


@given(formula_st)
def test_formula_roundtrip(f):
    c = encode_formula(f)
    assert is_formula_code(c)
    assert decode_formula(c) == f


def test_unimodal_decoding_rejects_box1():
    c = encode_formula(Box(1, Prop(0)))
    assert is_formula_code(c, tense=True)
    assert not is_formula_code(c, tense=False)


def test_formula_codes_scan():
    # bot carries payload 0 only; tags above 5 are junk
    ok = [c for c in range(60) if is_formula_code(c)]
    assert all(encode_formula(decode_formula(c)) == c for c in ok)
    assert not is_formula_code(pair(1, 1))
    assert not is_formula_code(pair(6, 0))


# -- frames --------------------------------------------------------------------------------

def test_frame_roundtrip():
    for n in (1, 2, 3):
        for mask in range(0, 1 << (n * n), 7):
            fr = FiniteFrame(n, mask)
            c = encode_frame(fr)
            assert is_frame_code(c)
            assert decode_frame(c) == fr


def test_frame_code_rejects_large_mask():
    assert not is_frame_code(pair(0, 2))
    with pytest.raises(MalformedCode):
        decode_frame(pair(0, 2))


def test_canonical_frame_code_is_relabelling_invariant():
    a = FiniteFrame.from_edges(3, [(0, 1), (1, 2)])
    b = FiniteFrame.from_edges(3, [(2, 0), (0, 1)])
    assert canonical_frame_code(a) == canonical_frame_code(b)
    assert canonical_frame_code(a) != canonical_frame_code(FiniteFrame.from_edges(3, [(0, 1)]))
