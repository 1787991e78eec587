import itertools

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from oracles import dims_by_counting
from parabolic_orbits.classifier import FINITE, INFINITE, classify, dichotomy_check
from parabolic_orbits.combinatorics import Triple, dims_report
from parabolic_orbits.quadratic_form import (
    build_form,
    evaluate,
    is_positive_definite,
    is_positive_semidefinite,
    radical_basis,
)
from parabolic_orbits.tables import MAXIMAL_FINITE, MINIMAL_INFINITE

triples = st.tuples(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))


# -- dimensions -----------------------------------------------------------------


@pytest.mark.parametrize("a", sorted(MINIMAL_INFINITE))
def test_table_rows_match_position_count(a):
    d, expected = MINIMAL_INFINITE[a]
    dimP, dimQu, derived = dims_by_counting(a, d)
    rep = dims_report(a, d)
    assert (rep.dimP, rep.dimQu, rep.dim_qu_derived) == (dimP, dimQu, derived)
    assert rep.dimP_mod_Qu == rep.dim_qu_mod_derived == expected


@settings(max_examples=60, deadline=None)
@given(triples.flatmap(lambda a: st.tuples(st.just(a), st.lists(st.integers(1, 3), min_size=sum(a), max_size=sum(a)))))
def test_dims_report_matches_position_count(case):
    a, d = case
    dimP, dimQu, derived = dims_by_counting(a, d)
    rep = dims_report(a, d)
    assert (rep.dimP, rep.dimQu, rep.dim_qu_derived) == (dimP, dimQu, derived)
    assert rep.dim_qu_mod_derived == dimQu - derived


def test_triple_validation():
    with pytest.raises(ValueError):
        Triple.of((0, 1, 1))
    with pytest.raises(ValueError):
        Triple.of((1, 1))
    assert Triple.of((1, 2, 3)).b == (0, 1, 3, 6)
    assert tuple(Triple.of((1, 2, 3)).reverse()) == (3, 2, 1)


# -- unit forms ---------------------------------------------------------------


@pytest.mark.parametrize("a", sorted(MINIMAL_INFINITE))
def test_minimal_infinite_forms(a):
    d, _ = MINIMAL_INFINITE[a]
    form = build_form(a)
    assert is_positive_semidefinite(form)
    assert not is_positive_definite(form)
    assert radical_basis(form) == [tuple(d)]
    assert evaluate(form, d) == 0
    # independent kernel: sympy over Q
    kernel = Matrix(form.as_lists()).nullspace()
    assert len(kernel) == 1
    v = kernel[0] / min(x for x in kernel[0] if x != 0)
    assert tuple(int(x) for x in v) == tuple(d)


def test_smallest_form_is_definite():
    form = build_form((1, 1, 1))
    assert is_positive_definite(form)
    assert radical_basis(form) == []
    minors = [Matrix(form.as_lists())[:k, :k].det() for k in (1, 2, 3)]
    assert minors == [2, 3, 4]


@settings(max_examples=60, deadline=None)
@given(triples)
def test_form_is_symmetric_with_diagonal_two(a):
    g = build_form(a).as_lists()
    assert all(g[i][i] == 2 for i in range(len(g)))
    assert all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(MINIMAL_INFINITE)), st.integers(0, 2))
def test_definiteness_after_shrinking_block(m, k):
    # removing a vertex from a minimal infinite triple gives a finite one
    a = list(m)
    a[k] -= 1
    if a[k] == 0:
        return
    assert is_positive_definite(build_form(a))


# -- classifier ---------------------------------------------------------------


@pytest.mark.parametrize(
    "a,kind,witness",
    [
        ((1, 2, 100), FINITE, (1, 2, "*")),
        ((2, 3, 2), INFINITE, (2, 3, 2)),
        ((4, 1, 7), FINITE, ("*", 1, "*")),
        ((1, 4, 3), INFINITE, (1, 4, 3)),
    ],
)
def test_classify_examples(a, kind, witness):
    v = classify(a).to_json()
    assert v["kind"] == kind
    assert tuple(v["witness"]) == witness


def test_dichotomy_up_to_twelve():
    rep = dichotomy_check(12)
    assert rep.checked == 1728
    assert rep.finite + rep.infinite == 1728
    assert rep.violations == ()


@settings(max_examples=200, deadline=None)
@given(triples)
def test_reversal_symmetry(a):
    assert classify(a).kind == classify(a[::-1]).kind


@settings(max_examples=200, deadline=None)
@given(triples, st.integers(0, 2))
def test_finite_type_is_closed_downwards(a, k):
    b = list(a)
    b[k] += 1
    if classify(b).kind == FINITE:
        assert classify(a).kind == FINITE


def test_tables_are_antichains():
    mins = list(MINIMAL_INFINITE)
    for x, y in itertools.permutations(mins, 2):
        assert not all(u <= v for u, v in zip(x, y))
    sporadic = [p for p in MAXIMAL_FINITE if None not in p]
    for x, y in itertools.permutations(sporadic, 2):
        assert not all(u <= v for u, v in zip(x, y))


def test_one_step_above_every_sporadic_finite_is_infinite():
    for pat in MAXIMAL_FINITE:
        if None in pat:
            continue
        for k in range(3):
            b = list(pat)
            b[k] += 1
            assert classify(b).kind == INFINITE, b
