from itertools import combinations

import pytest

from godelbench.errors import EnumerationTooLarge
from godelbench.lattice import (DownsetLattice, FiniteChain, FiniteLattice, check_distributive,
                                check_meet_join, downset_lattice, exists_incomparable_pair,
                                is_downset, m3, power_set_lattice, principal,
                                principal_downset_compactness_demo)


def _all_downsets(n):
    """By definition: subsets closed under going down the chain."""
    out = []
    for r in range(n + 1):
        for c in combinations(range(n), r):
            s = set(c)
            if all(y in s for x in s for y in range(n) if y <= x):
                out.append(frozenset(s))
    return out


@pytest.mark.parametrize("n", range(1, 13))
def test_downset_lattice_of_chain(n):
    chain = FiniteChain(n)
    lat = downset_lattice(chain)
    assert len(lat) == n + 1
    if n <= 10:
        assert set(lat.elements) == set(_all_downsets(n))
    assert exists_incomparable_pair(lat) is None
    assert check_distributive(lat)
    assert check_meet_join(lat)


def test_is_downset_and_principal():
    c = FiniteChain(4)
    assert is_downset(c, principal(2))
    assert not is_downset(c, frozenset({1}))
    assert not is_downset(c, frozenset({0, 7}))
    assert principal(0) == frozenset({0})


def test_m3_is_not_distributive():
    lat = m3()
    assert len(lat) == 5
    assert not check_distributive(lat)
    assert exists_incomparable_pair(lat) == ("a", "b")


def test_power_set_has_incomparables_but_distributes():
    lat = power_set_lattice(["a", "b"])
    assert exists_incomparable_pair(lat) is not None
    assert check_distributive(lat)


def test_non_lattice_is_rejected():
    # two incomparable maximal elements and nothing above them
    with pytest.raises(ValueError):
        FiniteLattice(("0", "a", "b"), lambda x, y: x == y or x == "0")
    with pytest.raises(ValueError):
        FiniteChain(0)


def test_distributivity_ceiling():
    with pytest.raises(EnumerationTooLarge):
        check_distributive(downset_lattice(FiniteChain(12)), max_triples=100)


def test_compactness_demo():
    r = principal_downset_compactness_demo(FiniteChain(3))
    assert r.elements == 4 and r.is_chain and r.distributive and r.all_ok
    assert r.decompositions == ((), (0,), (0, 1), (0, 1, 2))
    lines = r.lines()
    assert "downsets: 4" in lines and "chain: yes" in lines and lines[-1] == "all checks: pass"


def test_compactness_demo_cap():
    assert principal_downset_compactness_demo(FiniteChain(12)).all_ok
    with pytest.raises(EnumerationTooLarge):
        principal_downset_compactness_demo(FiniteChain(17))


def test_downset_lattice_uses_set_operations():
    lat = downset_lattice(FiniteChain(3))
    assert isinstance(lat, DownsetLattice)
    a, b = principal(0), principal(2)
    assert lat.meet(a, b) == a and lat.join(a, b) == b
