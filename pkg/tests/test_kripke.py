from collections import Counter

import pytest

from godelbench.codec import encode_frame
from godelbench.errors import EnumerationTooLarge, ModeMismatch
from godelbench.formulas import Box, Prop, duality_axiom, k_axiom
from godelbench.frames import FiniteFrame, canonical_frame
from godelbench.kripke import (Distinguished, EqualUpTo, LogicPresentation, enumerate_frames,
                               finite_frames_of, fmp_equal_bounded, frames_of_size,
                               is_isomorphic, validates)
from godelbench.parsing import parse_formula

from corpus import random_formulas
from oracles import burnside_digraph_count, naive_valid

T = parse_formula("box0 p0 -> p0")
FOUR = parse_formula("box0 p0 -> box0 box0 p0")
K = LogicPresentation(())


@pytest.mark.parametrize("n,count", [(1, 2), (2, 10), (3, 104)])
def test_frame_counts_match_burnside(n, count):
    assert burnside_digraph_count(n) == count
    assert len(frames_of_size(n)) == count


def test_burnside_size_four():
    # [DERIVED] by the orbit count; the enumerator is checked on it too
    assert burnside_digraph_count(4) == 3044
    assert len(frames_of_size(4)) == 3044


def test_enumeration_is_canonical_and_pairwise_non_isomorphic():
    frames = list(enumerate_frames(3))
    assert len(frames) == 116
    assert all(canonical_frame(fr) == fr for fr in frames)
    assert len({(fr.size, fr.mask) for fr in frames}) == 116
    assert Counter(fr.size for fr in frames) == {1: 2, 2: 10, 3: 104}
    codes = [encode_frame(fr) for fr in frames]
    assert codes == sorted(codes)


def test_enumeration_ceiling():
    with pytest.raises(EnumerationTooLarge):
        list(enumerate_frames(6, ceiling=5))


def test_validates_matches_naive():
    fmls = random_formulas(40, seed=3, depth=3)
    for fr in enumerate_frames(2, tense=True):
        edges = set(fr.edges)
        for f in fmls:
            assert validates(fr, f) == naive_valid(edges, fr.size, f)


def test_reflexivity_is_defined_by_t():
    for fr in enumerate_frames(3):
        reflexive = all(fr.related(i, i) for i in range(fr.size))
        assert validates(fr, T) == reflexive


def test_transitivity_is_defined_by_four():
    for fr in enumerate_frames(3):
        n = fr.size
        trans = all(not (fr.related(a, b) and fr.related(b, c)) or fr.related(a, c)
                    for a in range(n) for b in range(n) for c in range(n))
        assert validates(fr, FOUR) == trans


def test_k_and_duality_are_valid():
    for fr in enumerate_frames(3, tense=True):
        assert validates(fr, k_axiom(0))
        assert validates(fr, k_axiom(1))
        assert validates(fr, duality_axiom(0))
        assert validates(fr, duality_axiom(1))


def test_box1_needs_tense_frame():
    with pytest.raises(ModeMismatch):
        validates(FiniteFrame(1), Box(1, Prop(0)))


def test_validity_many_variables():
    # more than the in-word chunk of valuations: 3 points x 6 variables = 18 bits
    f = parse_formula("p0 & p1 & p2 & p3 & p4 & p5 -> p0")
    g = parse_formula("p0 & p1 & p2 & p3 & p4 -> box0 p5")
    fr = FiniteFrame.from_edges(3, [(0, 1)])
    assert validates(fr, f)
    assert not validates(fr, g)


def test_finite_frames_of_t():
    frames = finite_frames_of(LogicPresentation((T,)), 2)
    assert all(all(fr.related(i, i) for i in range(fr.size)) for fr in frames)
    assert len(frames) == 1 + 3  # 1 reflexive point; 3 reflexive 2-point frames


def test_finite_frames_threads_agree():
    logic = LogicPresentation((FOUR,))
    assert finite_frames_of(logic, 3, threads=1) == finite_frames_of(logic, 3, threads=4)


def test_fmp_distinguishing_frame():
    v = fmp_equal_bounded(K, K.extend(T), 1)
    assert v == Distinguished(FiniteFrame(1, 0), "left")


def test_fmp_equal_up_to():
    assert fmp_equal_bounded(K.extend(T), LogicPresentation((T,)), 3) == EqualUpTo(3)
    # T and T + (p0 -> box0 p0 -> p0) agree: the extra axiom is a tautology
    more = K.extend(T, parse_formula("p0 -> box0 p0 -> p0"))
    assert fmp_equal_bounded(K.extend(T), more, 3) == EqualUpTo(3)


def test_fmp_mode_mismatch():
    with pytest.raises(ModeMismatch):
        fmp_equal_bounded(K, LogicPresentation((), tense=True), 1)


def test_isomorphism():
    a = FiniteFrame.from_edges(2, [(0, 1)])
    b = FiniteFrame.from_edges(2, [(1, 0)])
    assert is_isomorphic(a, b)
    assert not is_isomorphic(a, FiniteFrame.from_edges(2, [(0, 0)]))
