"""Isoclasses of modules in M(a, d), found without using the group action.

Every point of q_u(a, d)(F_p) gives a module in normal form.  Points are
bucketed by invariants of their modules: ranks of x and x^2 on the flag
pieces, which are the dimensions dim Hom(Δ(i), -) and their analogues for
x^2 and for quotient flags.  A bucket is then certified by counting: the
normal-form points isomorphic to a module R number exactly |P(d)| / |Aut R|,
and |Aut R| is read off the Krull-Schmidt decomposition of R.  Buckets that
fail the count are split with hom-dimension certificates computed on the
points directly (Hom between normal-form modules is the space of
flag-preserving F with F x = y F), then certified by counting again.
Points left ambiguous fall back to exact isomorphism tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numba
import numpy as np

from ..combinatorics import Triple
from ..errors import BudgetExceeded, DualOracleMismatch
from ..fields import PrimeField
from ..representations import (
    Representation,
    decompose_with_algebras,
    hom_dim,
    is_isomorphic,
)
from ..fields import _rref_mod_p
from .bfs import Budget, check_deadline
from .dictionary import Layout, decode, layout, point_to_module


def gl_order(m: int, p: int) -> int:
    out = 1
    for k in range(m):
        out *= p**m - p**k
    return out


def parabolic_order(d, p: int) -> int:
    d = list(d)
    off = sum(d[i] * d[j] for i in range(len(d)) for j in range(i + 1, len(d)))
    out = p**off
    for m in d:
        out *= gl_order(m, p)
    return out


@dataclass
class Summand:
    module: Representation
    multiplicity: int
    residue_degree: int  # dim_Fp End(X)/rad End(X)


def automorphism_count(dim_end: int, summands: list[Summand], p: int) -> int:
    """|Aut M| = p^{dim End M} * prod_i prod_{k<=m_i} (1 - q_i^{-k}), q_i = p^{f_i}."""
    val = Fraction(p**dim_end)
    for s in summands:
        q = p**s.residue_degree
        for k in range(1, s.multiplicity + 1):
            val *= 1 - Fraction(1, q**k)
    assert val.denominator == 1
    return int(val)


def analyse_module(M: Representation, seed: int = 0) -> tuple[list[Summand], int]:
    """Krull-Schmidt summands with residue degrees, and dim End M."""
    parts = decompose_with_algebras(M, seed=seed)
    summands = [Summand(X, m, E.residue_dimension()) for X, m, E in parts]
    return summands, hom_dim(M, M)


# -- invariants -----------------------------------------------------------------


def invariant_specs(lay: Layout) -> np.ndarray:
    """Rows (power, first row, column stop): rank of (x^power)[row:, :stop].

    Windows are clipped to the support of x (rows < r1 + r2, columns >= r1)
    or of x^2 (rows < r1, columns >= r1 + r2); empty and repeated windows
    are dropped.
    """
    r1, r2, _ = lay.r
    support = {1: (r1 + r2, r1), 2: (r1, r1 + r2)}
    e = (0,) + lay.e
    specs = set()
    for power, (row_stop, col_start) in support.items():
        for i in range(len(e) - 1):
            for j in range(i + 1, len(e)):
                r0, c1 = e[i], e[j]
                if r0 < row_stop and c1 > col_start:
                    specs.add((power, r0, c1))
    specs = sorted(specs)
    return np.array(specs, dtype=np.int64).reshape(-1, 3)


@numba.njit(cache=True)
def _rank_mod_p(A, p, inv):
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        s = inv[A[r, c]]
        for j in range(c, n):
            A[r, j] = (A[r, j] * s) % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
    return r


@numba.njit(cache=True)
def _prefix_ranks(buf, m, n, p, inv, cum):
    # cum[c] = rank of the first c columns of buf[:m, :n]
    r = 0
    cum[0] = 0
    for c in range(n):
        if r < m:
            piv = -1
            for i in range(r, m):
                if buf[i, c] != 0:
                    piv = i
                    break
            if piv >= 0:
                if piv != r:
                    for j in range(c, n):
                        tmp = buf[r, j]
                        buf[r, j] = buf[piv, j]
                        buf[piv, j] = tmp
                s = inv[buf[r, c]]
                for j in range(c, n):
                    buf[r, j] = (buf[r, j] * s) % p
                for i in range(r + 1, m):
                    f = buf[i, c]
                    if f != 0:
                        for j in range(c, n):
                            buf[i, j] = (buf[i, j] - f * buf[r, j]) % p
                r += 1
        cum[c + 1] = r


@numba.njit(cache=True)
def _invariant_kernel(start, count, p, D, n, r1, r12, rows, cols, specs, inv, out):
    X = np.zeros((n, n), np.int64)
    X2 = np.zeros((n, n), np.int64)
    buf = np.zeros((n, n), np.int64)
    cum = np.zeros(n + 1, np.int64)
    n_specs = specs.shape[0]
    for idx in range(count):
        c = start + idx
        X[:, :] = 0
        for k in range(D):
            X[rows[k], cols[k]] = c % p
            c //= p
        # x^2 lives in rows < r1, columns >= r1 + r2
        for i in range(r1):
            for j in range(r12, n):
                acc = 0
                for l in range(r1, r12):
                    acc += X[i, l] * X[l, j]
                X2[i, j] = acc % p
        s = 0
        while s < n_specs:
            power = specs[s, 0]
            r0 = specs[s, 1]
            m = (r12 if power == 1 else r1) - r0
            for i in range(m):
                for j in range(n):
                    buf[i, j] = X[r0 + i, j] if power == 1 else X2[r0 + i, j]
            _prefix_ranks(buf, m, n, p, inv, cum)
            # specs are sorted, so all windows sharing (power, r0) are adjacent
            while s < n_specs and specs[s, 0] == power and specs[s, 1] == r0:
                out[idx, s] = cum[specs[s, 2]]
                s += 1


# -- hom certificates between normal-form points ---------------------------------


def hom_pattern(lay: Layout) -> tuple[np.ndarray, np.ndarray]:
    """Positions (i, j) of a flag-preserving n x n matrix (fine block of i <= that of j)."""
    blk = np.repeat(np.arange(len(lay.d)), lay.d)
    i, j = np.nonzero(blk[:, None] <= blk[None, :])
    return i.astype(np.int64), j.astype(np.int64)


@numba.njit(cache=True)
def _fill(X, code, p, rows, cols):
    X[:, :] = 0
    c = code
    for k in range(rows.shape[0]):
        X[rows[k], cols[k]] = c % p
        c //= p


@numba.njit(cache=True)
def _hom_system(S, T, pr, pc, p, eq_index):
    # F S - T F = 0 for F supported on the pattern.  Only entries (r, c)
    # with coarse block of r < that of c can be nonzero; eq_index numbers them.
    U = pr.shape[0]
    n = S.shape[0]
    m = 0
    for i in range(n):
        for j in range(n):
            if eq_index[i, j] >= 0:
                m += 1
    A = np.zeros((m, U), np.int64)
    for u in range(U):
        a = pr[u]
        b = pc[u]
        for c in range(n):
            if S[b, c] != 0:
                A[eq_index[a, c], u] += S[b, c]
        for r in range(n):
            if T[r, a] != 0:
                A[eq_index[r, b], u] -= T[r, a]
    for i in range(m):
        for u in range(U):
            A[i, u] %= p
    return A


@numba.njit(cache=True)
def _hom_dim(S, T, pr, pc, p, inv, eq):
    # dim {F flag-preserving : F S = T F}
    return pr.shape[0] - _rank_mod_p(_hom_system(S, T, pr, pc, p, eq), p, inv)


@numba.njit(cache=True)
def _has_invertible_hom(S, T, pr, pc, p, inv, eq, trials, state):
    """Search Hom(S, T) for an invertible map: basis vectors, then random combinations."""
    n = S.shape[0]
    U = pr.shape[0]
    A = _hom_system(S, T, pr, pc, p, eq)
    piv = _rref_mod_p(A, p)
    is_piv = np.zeros(U, np.bool_)
    for c in piv:
        is_piv[c] = True
    k = U - piv.shape[0]
    if k == 0:
        return n == 0
    N = np.zeros((k, U), np.int64)
    f = 0
    for c in range(U):
        if not is_piv[c]:
            N[f, c] = 1
            for i in range(piv.shape[0]):
                N[f, piv[i]] = (p - A[i, c]) % p
            f += 1
    coef = np.zeros(k, np.int64)
    Fm = np.zeros((n, n), np.int64)
    for trial in range(k + trials):
        if trial < k:
            coef[:] = 0
            coef[trial] = 1
        else:
            for j in range(k):
                state = (state * 6364136223846793005 + 1442695040888963407) & 0x7FFFFFFFFFFFFFFF
                coef[j] = (state >> 17) % p
        Fm[:, :] = 0
        for u in range(U):
            v = 0
            for j in range(k):
                v += coef[j] * N[j, u]
            Fm[pr[u], pc[u]] = v % p
        if _rank_mod_p(Fm.copy(), p, inv) == n:
            return True
    return False


@numba.njit(cache=True)
def _match_kernel(codes, status, R, dim_end, p, n, rows, cols, pr, pc, inv, eq, trials, seed):
    """Update status[k] for points not yet decided.

    From -1 (unchecked): 0 if a hom dimension rules out M_k = R, else 1.
    From 1, when trials > 0: 2 if an invertible map R -> M_k is found.
    """
    X = np.zeros((n, n), np.int64)
    for k in range(codes.shape[0]):
        if status[k] == 0 or status[k] == 2:
            continue
        _fill(X, codes[k], p, rows, cols)
        if status[k] < 0:
            if (
                _hom_dim(R, X, pr, pc, p, inv, eq) != dim_end
                or _hom_dim(X, R, pr, pc, p, inv, eq) != dim_end
                or _hom_dim(X, X, pr, pc, p, inv, eq) != dim_end
            ):
                status[k] = 0
                continue
            status[k] = 1
        if trials > 0 and _has_invertible_hom(R, X, pr, pc, p, inv, eq, trials, seed + codes[k]):
            status[k] = 2


class PointHoms:
    """Hom computations between modules of points of one q_u(a, d)(F_p)."""

    def __init__(self, lay: Layout, p: int):
        self.lay, self.p = lay, p
        self.inv = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
        self.pr, self.pc = hom_pattern(lay)
        eq = np.full((lay.n, lay.n), -1, dtype=np.int64)
        eq[lay.rows, lay.cols] = np.arange(lay.dim)
        self.eq = eq

    def matrix(self, code: int) -> np.ndarray:
        X = np.zeros((self.lay.n, self.lay.n), np.int64)
        _fill(X, code, self.p, self.lay.rows, self.lay.cols)
        return X

    def hom_dim(self, source_code: int, target_code: int) -> int:
        S, T = self.matrix(source_code), self.matrix(target_code)
        return int(_hom_dim(S, T, self.pr, self.pc, self.p, self.inv, self.eq))

    def match(self, codes: np.ndarray, rep_code: int, dim_end: int, status=None, trials: int = 0, seed: int = 0) -> np.ndarray:
        """Match points against the module of one point; see _match_kernel.

        Pass the returned status back in to search for isomorphisms, or to
        retry undecided points with more trials.
        """
        codes = np.asarray(codes, np.int64)
        status = np.full(len(codes), -1, dtype=np.int8) if status is None else status
        if len(codes):
            lay = self.lay
            _match_kernel(codes, status, self.matrix(rep_code), dim_end, self.p, lay.n, lay.rows, lay.cols,
                          self.pr, self.pc, self.inv, self.eq, trials, seed)
        return status


def point_hom_dims(lay: Layout, p: int, source_code: int, target_code: int) -> int:
    """dim Hom(M_x, M_y) for two points of the same q_u(a, d)."""
    return PointHoms(lay, p).hom_dim(source_code, target_code)


def point_invariants(lay: Layout, p: int, start: int = 0, count: Optional[int] = None) -> np.ndarray:
    N = lay.state_count(p)
    count = N - start if count is None else count
    specs = invariant_specs(lay)
    inv = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
    out = np.zeros((count, len(specs)), dtype=np.int16)
    if count and len(specs):
        _invariant_kernel(start, count, p, lay.dim, lay.n, lay.r[0], lay.r[0] + lay.r[1], lay.rows, lay.cols, specs, inv, out)
    return out


# -- enumeration ----------------------------------------------------------------


@dataclass
class Isoclass:
    code: int  # smallest code of a point in the class
    module: Representation
    point_count: int  # number of points of q_u(F_p) in the class
    aut_order: int
    dim_end: int
    summands: list = dc_field(repr=False)
    resolution: str = "count"

    @property
    def is_indecomposable(self) -> bool:
        return len(self.summands) == 1 and self.summands[0].multiplicity == 1


@dataclass
class IsoclassEnumeration:
    a: tuple
    d: tuple
    p: int
    classes: list
    buckets: int
    split_buckets: int
    seed: int

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return (c.module for c in self.classes)

    def __getitem__(self, k):
        return self.classes[k].module

    def to_json(self) -> dict:
        return {
            "schema": "parabolic-orbits/isoclasses",
            "version": 1,
            "a": list(self.a),
            "d": list(self.d),
            "field": {"kind": "prime", "p": self.p},
            "isoclass_count": len(self.classes),
            "buckets": self.buckets,
            "split_buckets": self.split_buckets,
            "seed": self.seed,
            "classes": [
                {
                    "code": c.code,
                    "point_count": c.point_count,
                    "aut_order": c.aut_order,
                    "dim_end": c.dim_end,
                    "summand_delta_dims": sorted(
                        [list(_delta(s.module)) for s in c.summands for _ in range(s.multiplicity)]
                    ),
                    "resolution": c.resolution,
                    "module": c.module.to_json(),
                }
                for c in self.classes
            ],
        }


def _delta(M):
    prev = (0,) + M.dims[:-1]
    return tuple(x - y for x, y in zip(M.dims, prev))


def _make_class(lay, code, p, F, order_P, seed, resolution="count") -> Isoclass:
    M = point_to_module(lay.a, lay.d, decode(lay, code, p), F)
    summands, dim_end = analyse_module(M, seed)
    aut = automorphism_count(dim_end, summands, p)
    assert order_P % aut == 0
    return Isoclass(code, M, order_P // aut, aut, dim_end, summands, resolution)


def enumerate_isoclasses(a, d, p: int, budget: Budget = Budget(), seed: int = 0) -> IsoclassEnumeration:
    return _enumerate_cached(tuple(Triple.of(a)), tuple(int(v) for v in d), int(p), budget, int(seed))


@lru_cache(maxsize=4096)
def _enumerate_cached(a, d, p, budget, seed) -> IsoclassEnumeration:
    F = PrimeField(p)
    lay = layout(a, d)
    N = lay.state_count(p)
    budget.check_states(N)
    deadline = budget.deadline()
    order_P = parabolic_order(d, p)
    inv = point_invariants(lay, p)
    if inv.shape[1]:
        keys = np.ascontiguousarray(inv).view(np.dtype((np.void, inv.dtype.itemsize * inv.shape[1]))).ravel()
        _, first, labels, counts = np.unique(keys, return_index=True, return_inverse=True, return_counts=True)
    else:
        first, labels, counts = np.array([0]), np.zeros(N, dtype=np.int64), np.array([N])
    labels = labels.ravel()
    classes = []
    split = 0
    for b in np.argsort(first):
        check_deadline(deadline)
        rep = _make_class(lay, int(first[b]), p, F, order_P, seed)
        if rep.point_count == counts[b]:
            classes.append(rep)
            continue
        if rep.point_count > counts[b]:
            raise DualOracleMismatch(f"isoclass of code {rep.code} larger than its invariant bucket")
        split += 1
        members = np.flatnonzero(labels == b)
        classes.extend(_split_bucket(lay, p, F, order_P, seed, members, rep, deadline))
    classes.sort(key=lambda c: c.code)
    if sum(c.point_count for c in classes) != N:
        raise DualOracleMismatch("isoclass point counts do not sum to the number of points")
    return IsoclassEnumeration(a, d, p, classes, len(counts), split, seed)


def _split_bucket(lay, p, F, order_P, seed, members, first_rep, deadline) -> list[Isoclass]:
    """Partition one invariant bucket into isoclasses.

    For each representative R in turn, the unassigned points are matched
    against R.  A point whose hom dimensions against R differ from dim End R
    is ruled out.  The class of R has exactly |P| / |Aut R| points and lies
    among the remaining candidates, so if their number is exactly that, they
    are the class.  Otherwise isomorphisms R -> M_x are searched for in the
    hom spaces, and a shortfall is made up by exact isomorphism tests.  The
    first unassigned point then seeds the next class.
    """
    found = []
    rep = first_rep
    homs = PointHoms(lay, p)
    unassigned = members
    while True:
        check_deadline(deadline)
        status = homs.match(unassigned, rep.code, rep.dim_end)
        if np.count_nonzero(status == 1) == rep.point_count:
            # the class of R lies among the candidates, so it is all of them
            status[status == 1] = 2
        for trials in (16, 256):
            if np.count_nonzero(status == 2) < rep.point_count:
                status = homs.match(unassigned, rep.code, rep.dim_end, status, trials=trials, seed=seed + trials)
        tally = int(np.count_nonzero(status == 2))
        if tally < rep.point_count:
            for code in unassigned[status == 1]:
                check_deadline(deadline)
                M = point_to_module(lay.a, lay.d, decode(lay, int(code), p), F)
                if is_isomorphic(rep.module, M, seed=seed):
                    status[unassigned.searchsorted(code)] = 2
                    tally += 1
                    if tally == rep.point_count:
                        break
        if tally != rep.point_count:
            raise DualOracleMismatch(f"class of code {rep.code}: {tally} points, expected {rep.point_count}")
        rep.resolution = "split"
        found.append(rep)
        unassigned = unassigned[status != 2]
        if unassigned.size == 0:
            return found
        rep = _make_class(lay, int(unassigned[0]), p, F, order_P, seed, resolution="split")
