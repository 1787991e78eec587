"""The integral unit form attached to a triple, with exact definiteness and radical.

For a triple a the form is

    q(d) = sum_i d_i^2 + sum_{(i,j) in I} d_i d_j - sum_{(i,j) in J} d_i d_j

where I collects pairs inside one coarse block and J pairs in adjacent coarse
blocks.  On positive vectors q(d) = dim P/Q_u - dim q_u/q_u'.  Everything is
kept in integers by storing twice the Gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .combinatorics import Triple
from .errors import LengthMismatch


@dataclass(frozen=True)
class IndexSets:
    pair_set_I: frozenset
    pair_set_J: frozenset


@dataclass(frozen=True)
class UnitForm:
    t: int
    gram2: tuple[tuple[int, ...], ...]
    index_sets: IndexSets

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.gram2]


def index_sets(a) -> IndexSets:
    a = Triple.of(a)
    b = a.b
    I = {(i, j) for k in (1, 2, 3) for i in range(b[k - 1] + 1, b[k] + 1) for j in range(i + 1, b[k] + 1)}
    J = {
        (i, j)
        for k in (1, 2)
        for i in range(b[k - 1] + 1, b[k] + 1)
        for j in range(b[k] + 1, b[k + 1] + 1)
    }
    assert not I & J
    return IndexSets(frozenset(I), frozenset(J))


def build_form(a) -> UnitForm:
    a = Triple.of(a)
    t = a.t
    sets = index_sets(a)
    g = [[0] * t for _ in range(t)]
    for i in range(t):
        g[i][i] = 2
    for i, j in sets.pair_set_I:
        g[i - 1][j - 1] = g[j - 1][i - 1] = 1
    for i, j in sets.pair_set_J:
        g[i - 1][j - 1] = g[j - 1][i - 1] = -1
    return UnitForm(t=t, gram2=tuple(tuple(r) for r in g), index_sets=sets)


def evaluate(form: UnitForm, d: Sequence[int]) -> int:
    d = [int(v) for v in d]
    if len(d) != form.t:
        raise LengthMismatch(f"vector of length {len(d)} for a form of rank {form.t}")
    twice = sum(d[i] * form.gram2[i][j] * d[j] for i in range(form.t) for j in range(form.t))
    assert twice % 2 == 0, "unit form must take integer values"
    return twice // 2


def _definiteness(gram2) -> tuple[bool, int]:
    """(is PSD, rank) by symmetric elimination over the rationals.

    Pivots on a positive diagonal entry and passes to the Schur complement.
    A negative diagonal, or a zero diagonal entry with a nonzero off-diagonal
    in its row, certifies an indefinite direction.
    """
    A = [[Fraction(v) for v in row] for row in gram2]
    rank = 0
    while A:
        m = len(A)
        diag = [A[i][i] for i in range(m)]
        if any(v < 0 for v in diag):
            return False, rank
        k = next((i for i in range(m) if diag[i] > 0), None)
        if k is None:
            if any(v != 0 for row in A for v in row):
                return False, rank
            return True, rank
        piv = A[k][k]
        rest = [i for i in range(m) if i != k]
        A = [[A[i][j] - A[i][k] * A[k][j] / piv for j in rest] for i in rest]
        rank += 1
    return True, rank


def is_positive_semidefinite(form: UnitForm) -> bool:
    return _definiteness(form.gram2)[0]


def is_positive_definite(form: UnitForm) -> bool:
    psd, rank = _definiteness(form.gram2)
    return psd and rank == form.t


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {x in Z^t : A x = 0}, returned in Hermite normal form.

    Unimodular row reduction of [A^T | I]; rows whose left part vanishes span
    the (saturated) integer kernel.
    """
    m = len(rows)
    t = len(rows[0]) if m else 0
    aug = [[rows[r][c] for r in range(m)] + [int(c == k) for k in range(t)] for c in range(t)]
    piv_row = 0
    for col in range(m):
        while True:
            cand = [r for r in range(piv_row, t) if aug[r][col] != 0]
            if not cand:
                break
            best = min(cand, key=lambda r: abs(aug[r][col]))
            aug[piv_row], aug[best] = aug[best], aug[piv_row]
            done = True
            for r in range(piv_row + 1, t):
                if aug[r][col]:
                    q = aug[r][col] // aug[piv_row][col]
                    aug[r] = [x - q * y for x, y in zip(aug[r], aug[piv_row])]
                    if aug[r][col]:
                        done = False
            if done:
                piv_row += 1
                break
    kernel = [row[m:] for row in aug[piv_row:]]
    return hermite_normal_form(kernel)


def hermite_normal_form(basis: list[list[int]]) -> list[list[int]]:
    rows = [list(r) for r in basis if any(r)]
    if not rows:
        return []
    t = len(rows[0])
    out = []
    col = 0
    while rows and col < t:
        cand = [r for r in rows if r[col] != 0]
        if not cand:
            col += 1
            continue
        others = [r for r in rows if r[col] == 0]
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[col]))
            p = cand[0]
            nxt = [p]
            for r in cand[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                (nxt if r[col] else others).append(r)
            cand = nxt
        p = cand[0]
        if p[col] < 0:
            p = [-x for x in p]
        for idx, prev in enumerate(out):
            q = prev[col] // p[col]
            out[idx] = [x - q * y for x, y in zip(prev, p)]
        out.append(p)
        rows = [r for r in others if any(r)]
        col += 1
    return [_primitive(r) for r in out]


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    lead = next((x for x in v if x), 0)
    return [-x for x in v] if lead < 0 else v


def radical_basis(form: UnitForm) -> list[tuple[int, ...]]:
    """Primitive integer basis of the kernel of 2G (empty when definite)."""
    return [tuple(v) for v in integer_kernel(form.gram2)]
