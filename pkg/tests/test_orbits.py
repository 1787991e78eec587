import itertools

import numpy as np
import pytest

from oracles import linear_hom_dim, naive_orbits
from parabolic_orbits.errors import BudgetExceeded
from parabolic_orbits.fields import PrimeField
from parabolic_orbits.orbit_catalog.bfs import Budget, count_orbits_bruteforce
from parabolic_orbits.orbit_catalog.dictionary import decode, layout, point_to_module
from parabolic_orbits.orbit_catalog.isoclasses import (
    PointHoms,
    enumerate_isoclasses,
    gl_order,
    parabolic_order,
    point_invariants,
)
from parabolic_orbits.representations import hom_dim, is_isomorphic

SMALL = [
    ((1, 1, 1), (1, 1, 1), 2),
    ((1, 1, 1), (1, 1, 1), 3),
    ((1, 2, 1), (1, 1, 1, 1), 2),
    ((2, 1, 1), (1, 1, 1, 1), 2),
    ((1, 1, 2), (1, 1, 1, 1), 2),
    ((1, 1, 1), (2, 1, 1), 2),
]


@pytest.mark.parametrize("a,d,p", SMALL)
def test_bfs_matches_whole_group_action(a, d, p):
    rep = count_orbits_bruteforce(a, d, p)
    assert rep.size_multiset() == naive_orbits(a, d, p)


def test_borel_on_three_by_three():
    for p in (2, 3, 5):
        rep = count_orbits_bruteforce((1, 1, 1), (1, 1, 1), p)
        assert rep.orbit_count == 5
        assert sum(rep.sizes) == p**3
    assert count_orbits_bruteforce((1, 1, 1), (1, 1, 1), 2).size_multiset() == [1, 1, 2, 2, 2]


def test_group_orders():
    assert gl_order(2, 2) == 6
    assert gl_order(3, 3) == 26 * 24 * 18
    # P for d = (1,2,1): GL1 x GL2 x GL1 times the 5 off-diagonal entries
    assert parabolic_order((1, 2, 1), 2) == 6 * 2**5


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded) as exc:
        count_orbits_bruteforce((2, 3, 2), (1,) * 7, 3, Budget(states=10**6))
    assert exc.value.required == 3**16
    with pytest.raises(BudgetExceeded):
        enumerate_isoclasses((2, 3, 2), (1,) * 7, 3, Budget(states=10**6))
    with pytest.raises(BudgetExceeded):
        count_orbits_bruteforce((1, 1, 1), (1, 1, 1), 2, Budget(memory_bytes=1))


def test_orbit_report_json_is_stable():
    a = count_orbits_bruteforce((1, 2, 1), (1, 1, 1, 1), 3).to_json()
    b = count_orbits_bruteforce((1, 2, 1), (1, 1, 1, 1), 3).to_json()
    assert a == b
    assert a["orbit_count"] == len(a["orbits"])


@pytest.mark.parametrize("a,d,p", SMALL + [((1, 2, 2), (1, 1, 1, 1, 1), 2), ((1, 2, 1), (1, 2, 1, 1), 3)])
def test_invariants_are_constant_on_orbits(a, d, p):
    rep = count_orbits_bruteforce(a, d, p, keep_labels=True)
    inv = point_invariants(layout(a, d), p)
    for k in range(rep.orbit_count):
        rows = inv[rep.labels == k]
        assert (rows == rows[0]).all()


@pytest.mark.parametrize("a,d,p", SMALL + [((1, 2, 2), (1, 1, 1, 1, 1), 2), ((2, 3, 2), (1,) * 7, 2)])
def test_isoclasses_match_orbits(a, d, p):
    rep = count_orbits_bruteforce(a, d, p, keep_labels=True)
    enum = enumerate_isoclasses(a, d, p)
    assert len(enum) == rep.orbit_count
    # each class record is an actual orbit: size and representative agree
    by_code = {c.code: c for c in enum.classes}
    for code, size in zip(rep.representative_codes, rep.sizes):
        assert by_code[code].point_count == size
    assert sum(c.point_count for c in enum.classes) == p ** layout(a, d).dim


def test_class_modules_pairwise_non_isomorphic():
    enum = enumerate_isoclasses((1, 2, 1), (1, 1, 1, 1), 3)
    mods = list(enum)
    for M, N in itertools.combinations(mods, 2):
        assert not is_isomorphic(M, N)


@pytest.mark.parametrize("a,d,p", [((1, 2, 1), (1, 2, 1, 1), 3), ((2, 1, 1), (1, 2, 1, 2), 2)])
def test_point_hom_kernel_matches_generic_hom(a, d, p):
    lay = layout(a, d)
    F = PrimeField(p)
    homs = PointHoms(lay, p)
    rng = np.random.default_rng(11)
    codes = [int(c) for c in rng.integers(0, lay.state_count(p), 8)]
    mods = {c: point_to_module(a, d, decode(lay, c, p), F) for c in codes}
    for s, t in itertools.product(codes[:5], repeat=2):
        expected = hom_dim(mods[s], mods[t])
        assert homs.hom_dim(s, t) == expected
    for s, t in itertools.product(codes[5:], repeat=2):
        assert homs.hom_dim(s, t) == linear_hom_dim(mods[s], mods[t], p)


def test_enumeration_is_seed_independent():
    a, d, p = (1, 2, 1), (1, 2, 1, 1), 2
    counts = {len(enumerate_isoclasses(a, d, p, seed=s)) for s in (0, 1, 7)}
    assert counts == {count_orbits_bruteforce(a, d, p).orbit_count}
