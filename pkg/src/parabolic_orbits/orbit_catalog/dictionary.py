"""Points of the nilradical q_u(a, d) and the modules they correspond to.

A point x is the strictly block-upper n x n matrix with blocks x12, x13, x23
for the coarse blocks of sizes r = (r1, r2, r3).  Its module has
M_i = k^{e_i}, the standard inclusions as alpha maps, beta_{b2} = the top
r1 + r2 rows of x and beta_{b1} = the top-left r1 x (r1 + r2) corner.

Points over F_p are encoded as integers: coordinate k (x12, then x13, then
x23, each row-major) is the k-th base-p digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..combinatorics import Triple, block_data
from ..errors import NotInNormalForm, RelationViolation, ShapeMismatch
from ..fields import ExactField, PrimeField
from ..quiver_algebra import alpha, beta, build_quiver
from ..representations import Representation, check_relations


@dataclass(frozen=True)
class Layout:
    """Coordinates of q_u(a, d) inside gl_n, plus the flag data."""

    a: Triple
    d: tuple[int, ...]
    e: tuple[int, ...]
    r: tuple[int, int, int]
    n: int
    rows: np.ndarray
    cols: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.rows)

    def state_count(self, p: int) -> int:
        return p**self.dim


@lru_cache(maxsize=None)
def _layout(a: Triple, d: tuple[int, ...]) -> Layout:
    bd = block_data(a, d, allow_zero=True)
    r1, r2, r3 = bd.r
    o2, o3 = r1, r1 + r2
    pos = []
    pos += [(i, o2 + j) for i in range(r1) for j in range(r2)]
    pos += [(i, o3 + j) for i in range(r1) for j in range(r3)]
    pos += [(o2 + i, o3 + j) for i in range(r2) for j in range(r3)]
    rows = np.array([x for x, _ in pos], dtype=np.int64)
    cols = np.array([y for _, y in pos], dtype=np.int64)
    return Layout(a, tuple(d), bd.e, bd.r, bd.n, rows, cols)


def layout(a, d) -> Layout:
    return _layout(Triple.of(a), tuple(int(v) for v in d))


@dataclass(frozen=True, eq=False)
class NilradicalPoint:
    x12: np.ndarray
    x13: np.ndarray
    x23: np.ndarray

    def __eq__(self, other):
        return all(np.array_equal(getattr(self, k), getattr(other, k)) for k in ("x12", "x13", "x23"))

    def matrix(self, lay: Layout, field: ExactField) -> np.ndarray:
        X = field.zeros(lay.n, lay.n)
        r1, r2, _ = lay.r
        X[:r1, r1 : r1 + r2] = self.x12
        X[:r1, r1 + r2 :] = self.x13
        X[r1 : r1 + r2, r1 + r2 :] = self.x23
        return X

    def coordinates(self) -> np.ndarray:
        return np.concatenate([self.x12.reshape(-1), self.x13.reshape(-1), self.x23.reshape(-1)])

    def to_json(self) -> dict:
        return {k: np.asarray(getattr(self, k)).astype(np.int64).tolist() for k in ("x12", "x13", "x23")}


def point_from_coordinates(lay: Layout, coords) -> NilradicalPoint:
    r1, r2, r3 = lay.r
    c = np.asarray(coords)
    k1, k2 = r1 * r2, r1 * r2 + r1 * r3
    return NilradicalPoint(c[:k1].reshape(r1, r2), c[k1:k2].reshape(r1, r3), c[k2:].reshape(r2, r3))


def point_from_matrix(lay: Layout, X) -> NilradicalPoint:
    return point_from_coordinates(lay, np.asarray(X)[lay.rows, lay.cols])


def decode(lay: Layout, code: int, p: int) -> NilradicalPoint:
    digits = np.zeros(lay.dim, dtype=np.int64)
    for k in range(lay.dim):
        code, digits[k] = divmod(code, p)
    return point_from_coordinates(lay, digits)


def encode(point: NilradicalPoint, p: int) -> int:
    code = 0
    for v in reversed(point.coordinates().tolist()):
        code = code * p + int(v) % p
    return code


def point_to_module(a, d, x: NilradicalPoint, field: ExactField) -> Representation:
    lay = layout(a, d)
    r1, r2, r3 = lay.r
    for name, shape in (("x12", (r1, r2)), ("x13", (r1, r3)), ("x23", (r2, r3))):
        if np.shape(getattr(x, name)) != shape:
            raise ShapeMismatch(f"{name} has shape {np.shape(getattr(x, name))}, expected {shape}")
    Q = build_quiver(lay.a)
    _, b1, b2, _ = lay.a.b
    e = lay.e
    mats = {}
    for i in range(1, Q.t):
        mats[alpha(i)] = field.eye(e[i])[:, : e[i - 1]]
    X = x.matrix(lay, field)
    mats[beta(b2)] = X[: r1 + r2, :]
    mats[beta(b1)] = X[:r1, : r1 + r2]
    return Representation(Q, field, e, mats)


def _is_standard_inclusion(A, field) -> bool:
    m, n = A.shape
    return m >= n and np.array_equal(A, field.eye(m)[:, :n])


def module_to_point(a, d, M: Representation) -> NilradicalPoint:
    lay = layout(a, d)
    if M.dims != lay.e:
        raise NotInNormalForm(f"vertex dimensions {M.dims} differ from the flag {lay.e}")
    if not check_relations(M):
        raise RelationViolation("representation does not satisfy the defining relations")
    F = M.field
    for x in M.quiver.alpha_arrows:
        if not _is_standard_inclusion(M.mats[x.name], F):
            raise NotInNormalForm(f"{x.name} is not the standard inclusion")
    _, b1, b2, _ = lay.a.b
    r1, r2, _ = lay.r
    B2 = M.mats[beta(b2)]
    if not F.is_zero(B2[:, :r1]) or not F.is_zero(B2[r1:, : r1 + r2]):
        raise NotInNormalForm("beta map does not vanish on the flag where it must")
    return NilradicalPoint(B2[:r1, r1 : r1 + r2], B2[:r1, r1 + r2 :], B2[r1:, r1 + r2 :])


def normal_form(M: Representation) -> tuple[tuple[int, ...], Representation]:
    """An isomorphic copy with standard inclusions as alpha maps.

    Returns (Δ-dimension vector, module).  M must be Δ-filtered.
    """
    from ..representations import delta_dimension_vector

    d = delta_dimension_vector(M)
    F = M.field
    t = M.quiver.t
    n = M.dims[-1]
    # images of M_i in M_t along the alpha chain
    chains = [None] * t
    chains[t - 1] = F.eye(n)
    for i in range(t - 1, 0, -1):
        chains[i - 1] = F.matmul(chains[i], M.mats[alpha(i)])
    cols = F.zeros(n, 0)
    for i in range(t):
        for j in range(chains[i].shape[1]):
            trial = np.concatenate([cols, chains[i][:, j : j + 1]], axis=1)
            if F.rank(trial) > cols.shape[1]:
                cols = trial
    g_t = F.inv(cols) if n else F.zeros(0, 0)
    g = [F.matmul(g_t, chains[i])[: M.dims[i], :] for i in range(t)]
    return d, M.change_basis(g)


def all_codes(lay: Layout, p: int) -> np.ndarray:
    return np.arange(lay.state_count(p), dtype=np.int64)
