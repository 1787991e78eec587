import itertools
import json

import numpy as np
import pytest

from oracles import linear_hom_dim
from parabolic_orbits.errors import LengthMismatch, NotComparable, NotStabilized, ShapeMismatch
from parabolic_orbits.fields import PrimeField
from parabolic_orbits.orbit_catalog.arquiver import ar_quiver, projective_vertices
from parabolic_orbits.orbit_catalog.bfs import Budget, count_orbits_bruteforce
from parabolic_orbits.orbit_catalog.degeneration import degeneration_poset, hom_order
from parabolic_orbits.orbit_catalog.dictionary import decode, layout, point_to_module
from parabolic_orbits.orbit_catalog.embed import embed, vertex_map, zero_delta_positions
from parabolic_orbits.orbit_catalog.harvest import (
    count_multisets,
    harvest_indecomposables,
    harvest_until_stable,
    sub_vectors,
)
from parabolic_orbits.quiver_algebra import standard_module
from parabolic_orbits.representations import delta_dimension_vector, direct_sum, hom_dim, is_indecomposable

SEVEN = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)}


# -- harvest ------------------------------------------------------------------


def test_sub_vectors():
    assert sub_vectors((1, 1)) == [(0, 1), (1, 0), (1, 1)]
    assert len(sub_vectors((2, 1, 1))) == 3 * 2 * 2 - 1


@pytest.mark.parametrize("p", [2, 3])
def test_seven_indecomposables(p):
    cat = harvest_indecomposables((1, 1, 1), (1, 1, 1), p)
    assert set(cat.delta_dims()) == SEVEN
    assert len(cat) == 7
    for e in cat:
        assert is_indecomposable(e.module)
        assert e.residue_degree == 1
    assert not cat.stabilized  # (1,1,1) itself is new at this bound


def test_stable_harvest():
    cat = harvest_until_stable((1, 1, 1), 2)
    assert cat.stabilized
    assert cat.bound == (2, 2, 2)
    assert set(cat.delta_dims()) == SEVEN
    json.dumps(cat.to_json())


def test_stabilization_needs_budget():
    with pytest.raises(NotStabilized):
        harvest_until_stable((1, 1, 1), 2, Budget(states=4))


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        harvest_indecomposables((1, 1, 1), (1, 1), 2)


def test_count_multisets_small():
    cat = harvest_indecomposables((1, 1, 1), (2, 2, 2), 2)
    # partitions of (1,1,1) into the seven interval-like vectors
    assert count_multisets(cat, (1, 1, 1)) == 5
    assert count_multisets(cat, (1, 0, 0)) == 1
    assert count_multisets(cat, (2, 0, 0)) == 1
    for d in itertools.product((1, 2), repeat=3):
        assert count_multisets(cat, d) == count_orbits_bruteforce((1, 1, 1), d, 2).orbit_count


# -- AR quiver ----------------------------------------------------------------


@pytest.fixture(scope="module")
def quiver111():
    return ar_quiver((1, 1, 1), (2, 2, 2), 2)


def test_ar_quiver_arrows_and_translate(quiver111):
    q = quiver111
    labels = [n.label for n in q.nodes]
    assert labels == ["001", "010", "011", "100", "101", "110", "111"]
    assert set(q.arrows) == {(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 0), (4, 5), (5, 1), (5, 6), (6, 2)}
    assert set(q.arrows.values()) == {1}
    assert q.translate == {0: 3, 1: 4, 2: 5, 4: 1}
    assert q.mesh_additive()
    assert q.ambiguous == []


def test_translate_free_nodes_are_projective(quiver111):
    proj = projective_vertices(quiver111)
    assert proj == {3: 1, 5: 2, 6: 3}
    assert sorted(quiver111.projective_nodes()) == sorted(proj)


def test_ar_quiver_same_over_f3(quiver111):
    q3 = ar_quiver((1, 1, 1), (2, 2, 2), 3)
    assert q3.arrows == quiver111.arrows
    assert q3.translate == quiver111.translate


def test_ar_quiver_needs_stable_harvest():
    with pytest.raises(NotStabilized):
        ar_quiver((1, 1, 1), (1, 1, 1), 2)


def test_ar_dot_is_sorted_and_deterministic(quiver111):
    dot = quiver111.to_dot()
    assert dot == ar_quiver((1, 1, 1), (2, 2, 2), 2).to_dot()
    names = [line.split('"')[1] for line in dot.splitlines() if "label=" in line and "->" not in line]
    assert names == sorted(names)
    assert dot.count("style=dashed") == 4


# -- degenerations ------------------------------------------------------------


def test_hom_order_poset():
    P = degeneration_poset((1, 1, 1), (1, 1, 1), 3)
    labels = [P.label(k) for k in range(len(P))]
    assert labels == ["001+010+100", "001+110", "010+101", "011+100", "111"]
    assert P.hasse_edges() == [(1, 2), (2, 0), (3, 2), (4, 1), (4, 3)]
    assert P.maxima() == [0] and P.minima() == [4]
    assert P.is_antisymmetric()
    assert P.orbit_sizes() == [1, 6, 2, 6, 12]
    out = P.to_json()
    assert out["schema"] == "parabolic-orbits/degeneration-poset"
    json.dumps(out)


def test_hom_order_is_a_preorder():
    F = PrimeField(2)
    D = [standard_module((1, 1, 1), i, F) for i in (1, 2, 3)]
    tests = list(harvest_until_stable((1, 1, 1), 2))
    _, leq = hom_order([direct_sum(D), D[0]], [e.module for e in tests])
    assert leq[0, 0] and leq[1, 1]


# -- embedding ----------------------------------------------------------------


def test_vertex_maps():
    assert vertex_map((1, 1, 1), (2, 1, 1)) == (1, 1, 2, 3)
    assert zero_delta_positions((1, 1, 1), (2, 1, 1)) == (2,)
    assert zero_delta_positions((1, 2, 1), (2, 3, 2)) == (2, 5, 7)
    assert vertex_map((1, 2, 1), (1, 2, 1)) == (1, 2, 3, 4)
    with pytest.raises(NotComparable):
        vertex_map((2, 1, 1), (1, 2, 1))


def test_embedding_of_standard_module():
    F = PrimeField(2)
    E = embed((1, 1, 1), (2, 1, 1), standard_module((1, 1, 1), 1, F))
    assert E.dims == (1, 1, 1, 1)
    assert delta_dimension_vector(E) == (1, 0, 0, 0)
    with pytest.raises(ShapeMismatch):
        embed((1, 2, 1), (2, 2, 1), standard_module((1, 1, 1), 1, F))


@pytest.mark.parametrize("small,big,d", [((1, 1, 1), (2, 1, 1), (1, 1, 1)), ((1, 1, 1), (1, 2, 2), (1, 2, 1))])
def test_embedding_preserves_homs(small, big, d):
    F = PrimeField(3)
    lay = layout(small, d)
    rng = np.random.default_rng(2)
    codes = [int(c) for c in rng.integers(0, lay.state_count(3), 6)]
    mods = [point_to_module(small, d, decode(lay, c, 3), F) for c in codes]
    images = [embed(small, big, M) for M in mods]
    for i, j in itertools.product(range(len(mods)), repeat=2):
        assert hom_dim(images[i], images[j]) == hom_dim(mods[i], mods[j])
    assert linear_hom_dim(images[0], images[1], 3) == hom_dim(mods[0], mods[1])
