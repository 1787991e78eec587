import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from parabolic_orbits.fields import PrimeField, Rationals, field_from_spec

PRIMES = [2, 3, 5, 7]


def small_matrix(max_dim=6, max_entry=10):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def sympy_rank_mod(rows, p):
    dm = DomainMatrix([[GF(p)(int(x)) for x in r] for r in rows], (len(rows), len(rows[0])), GF(p))
    return dm.rank()


@settings(max_examples=80, deadline=None)
@given(small_matrix(), st.sampled_from(PRIMES))
def test_rank_matches_sympy_mod_p(rows, p):
    assert PrimeField(p).rank(np.array(rows)) == sympy_rank_mod(rows, p)


@settings(max_examples=60, deadline=None)
@given(small_matrix(max_dim=5, max_entry=4))
def test_rank_over_rationals_matches_sympy(rows):
    assert Rationals().rank(rows) == Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(small_matrix(), st.sampled_from(PRIMES))
def test_rref_shape_and_nullspace(rows, p):
    F = PrimeField(p)
    A = F.array(np.array(rows))
    R, pivots = F.rref(A)
    assert R.shape == A.shape
    assert len(pivots) == F.rank(A)
    for k, c in enumerate(pivots):
        assert R[k, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    N = F.nullspace(A)
    if N.size:
        assert not np.any(F.matmul(A, N.T))
        assert N.shape[0] == A.shape[1] - len(pivots)


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_and_power(p):
    F = PrimeField(p)
    rng = np.random.default_rng(p)
    for _ in range(20):
        A = F.random(rng, (4, 4))
        if not F.is_invertible(A):
            continue
        assert np.array_equal(F.matmul(A, F.inv(A)), F.eye(4))
        naive = F.eye(4)
        for _ in range(7):
            naive = F.matmul(naive, A)
        assert np.array_equal(F.power(A, 7), naive)


def test_field_descriptors_round_trip():
    for F in (PrimeField(5), Rationals()):
        assert type(F).from_json(F.to_json()) == F
    assert field_from_spec("Q") == Rationals()
    assert field_from_spec(3) == PrimeField(3)
    with pytest.raises(ValueError):
        PrimeField(4)


def test_fraction_entries_reduce_mod_p():
    from fractions import Fraction

    F = PrimeField(7)
    assert F.array([[Fraction(1, 2)]])[0, 0] == 4
