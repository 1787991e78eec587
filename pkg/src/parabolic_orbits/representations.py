"""Representations of A(a): relations, hom spaces, isomorphism, Krull-Schmidt.

A representation stores one matrix per arrow, of shape (dim target, dim
source).  Homomorphisms f = (f_1, ..., f_t) solve f_target M_γ = N_γ f_source
for every arrow γ; the solution space is the kernel of one linear system
assembled from Kronecker products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .algebra import MatrixAlgebra
from .errors import FieldTooSmall, RelationViolation, ShapeMismatch
from .fields import ExactField, PrimeField
from .quiver_algebra import QuiverPresentation, build_quiver


class Representation:
    def __init__(self, quiver: QuiverPresentation, field: ExactField, dims, mats: dict):
        self.quiver = quiver
        self.field = field
        self.dims = tuple(int(v) for v in dims)
        if len(self.dims) != quiver.t or any(v < 0 for v in self.dims):
            raise ShapeMismatch(f"dims {self.dims} do not fit a quiver with {quiver.t} vertices")
        self.mats = {}
        for arr in quiver.arrows:
            if arr.name not in mats:
                raise ShapeMismatch(f"missing matrix for arrow {arr.name}")
            m = field.array(mats[arr.name])
            shape = (self.dims[arr.target - 1], self.dims[arr.source - 1])
            if m.size == 0:
                m = field.zeros(*shape)
            if m.shape != shape:
                raise ShapeMismatch(f"{arr.name}: expected shape {shape}, got {m.shape}")
            self.mats[arr.name] = m

    def __repr__(self):
        return f"Representation(a={tuple(self.quiver.a)}, dims={self.dims}, field={self.field!r})"

    @property
    def a(self):
        return self.quiver.a

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path(self, path: tuple[str, ...]) -> np.ndarray:
        F = self.field
        src, tgt = self.quiver.path_endpoints(path)
        out = F.eye(self.dims[src - 1])
        for name in reversed(path):
            out = F.matmul(self.mats[name], out)
        return out

    def direct_sum(self, other: "Representation") -> "Representation":
        _check_compatible(self, other)
        F = self.field
        mats = {}
        for arr in self.quiver.arrows:
            A, B = self.mats[arr.name], other.mats[arr.name]
            top = np.concatenate([A, F.zeros(A.shape[0], B.shape[1])], axis=1)
            bot = np.concatenate([F.zeros(B.shape[0], A.shape[1]), B], axis=1)
            mats[arr.name] = np.concatenate([top, bot], axis=0)
        dims = tuple(x + y for x, y in zip(self.dims, other.dims))
        return Representation(self.quiver, F, dims, mats)

    def change_basis(self, g: list[np.ndarray]) -> "Representation":
        """The isomorphic representation g M g^{-1} for invertible g_i."""
        F = self.field
        ginv = [F.inv(x) for x in g]
        mats = {}
        for arr in self.quiver.arrows:
            s, t = arr.source - 1, arr.target - 1
            mats[arr.name] = F.matmul(F.matmul(g[t], self.mats[arr.name]), ginv[s])
        return Representation(self.quiver, F, self.dims, mats)

    def over(self, field: ExactField) -> "Representation":
        """Reinterpret integer entries over another field."""
        mats = {k: _to_ints(v) for k, v in self.mats.items()}
        return Representation(self.quiver, field, self.dims, mats)

    def to_json(self) -> dict:
        return {
            "a": list(self.quiver.a),
            "field": self.field.to_json(),
            "dims": list(self.dims),
            "mats": {k: [[_json_scalar(x) for x in row] for row in v.tolist()] for k, v in self.mats.items()},
        }

    @classmethod
    def from_json(cls, obj) -> "Representation":
        from fractions import Fraction

        Q = build_quiver(obj["a"])
        F = ExactField.from_json(obj["field"])
        mats = {k: [[Fraction(x) for x in row] for row in v] for k, v in obj["mats"].items()}
        dims = obj["dims"]
        fixed = {}
        for arr in Q.arrows:
            m = mats[arr.name]
            shape = (dims[arr.target - 1], dims[arr.source - 1])
            fixed[arr.name] = F.zeros(*shape) if not m or not m[0] else F.array(m)
        return cls(Q, F, dims, fixed)


def _json_scalar(x):
    from fractions import Fraction

    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def _to_ints(A):
    from fractions import Fraction

    if A.dtype == object:
        out = np.zeros(A.shape, dtype=object)
        for idx, v in np.ndenumerate(A):
            v = Fraction(v)
            if v.denominator != 1:
                raise ValueError("cannot move a non-integral matrix to another field")
            out[idx] = v.numerator
        return out
    return A.copy()


def _check_compatible(M: Representation, N: Representation):
    if M.quiver is not N.quiver and M.quiver.a != N.quiver.a:
        raise ShapeMismatch("representations over different quivers")
    if M.field != N.field:
        raise ShapeMismatch("representations over different fields")


def zero_representation(a, field, dims=None) -> Representation:
    Q = build_quiver(a)
    dims = dims or (0,) * Q.t
    mats = {x.name: field.zeros(dims[x.target - 1], dims[x.source - 1]) for x in Q.arrows}
    return Representation(Q, field, dims, mats)


def direct_sum(modules) -> Representation:
    modules = list(modules)
    out = modules[0]
    for m in modules[1:]:
        out = out.direct_sum(m)
    return out


# -- relations and Δ-filtrations ----------------------------------------------


def check_relations(M: Representation) -> bool:
    F = M.field
    for rel in M.quiver.relation_ideal:
        lhs = M.path(rel.lhs)
        rhs = M.path(rel.rhs) if rel.rhs is not None else F.zeros(*lhs.shape)
        if lhs.shape != rhs.shape:
            raise ShapeMismatch("relation sides have different shapes")
        if not F.is_zero(F.sub(lhs, rhs)):
            return False
    return True


def is_delta_filtered(M: Representation) -> bool:
    if not check_relations(M):
        raise RelationViolation("representation does not satisfy the defining relations")
    F = M.field
    return all(F.rank(M.mats[x.name]) == M.dims[x.source - 1] for x in M.quiver.alpha_arrows)


def delta_dimension_vector(M: Representation) -> tuple[int, ...]:
    if not is_delta_filtered(M):
        raise ValueError("module is not Δ-filtered (some alpha map is not injective)")
    prev = (0,) + M.dims[:-1]
    return tuple(x - y for x, y in zip(M.dims, prev))


# -- homomorphisms -------------------------------------------------------------


@dataclass
class HomBasis:
    source: Representation
    target: Representation
    vectors: np.ndarray  # rows: flattened (f_1, ..., f_t), each f_i row-major
    offsets: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def unflatten(self, v) -> tuple[np.ndarray, ...]:
        M, N = self.source, self.target
        return tuple(
            v[self.offsets[i] : self.offsets[i + 1]].reshape(N.dims[i], M.dims[i]) for i in range(len(M.dims))
        )

    @property
    def maps(self) -> list[tuple[np.ndarray, ...]]:
        return [self.unflatten(v) for v in self.vectors]

    def combination(self, coeffs) -> tuple[np.ndarray, ...]:
        F = self.source.field
        v = F.reduce(np.asarray(coeffs, dtype=self.vectors.dtype) @ self.vectors)
        return self.unflatten(v)


def hom_system(M: Representation, N: Representation):
    _check_compatible(M, N)
    F = M.field
    sizes = [n * m for n, m in zip(N.dims, M.dims)]
    offsets = tuple(itertools.accumulate([0] + sizes))
    U = offsets[-1]
    blocks = []
    for arr in M.quiver.arrows:
        s, t = arr.source - 1, arr.target - 1
        rows = N.dims[t] * M.dims[s]
        if rows == 0:
            continue
        A = F.zeros(rows, U)
        if sizes[t]:
            A[:, offsets[t] : offsets[t + 1]] = F.kron(F.eye(N.dims[t]), M.mats[arr.name].T)
        if sizes[s]:
            A[:, offsets[s] : offsets[s + 1]] = F.sub(
                A[:, offsets[s] : offsets[s + 1]], F.kron(N.mats[arr.name], F.eye(M.dims[s]))
            )
        blocks.append(A)
    A = np.concatenate(blocks, axis=0) if blocks else F.zeros(0, U)
    return A, offsets


def hom_basis(M: Representation, N: Representation) -> HomBasis:
    A, offsets = hom_system(M, N)
    U = offsets[-1]
    vectors = M.field.nullspace(A) if U else M.field.zeros(0, 0)
    return HomBasis(M, N, vectors, offsets)


def hom_dim(M: Representation, N: Representation) -> int:
    A, offsets = hom_system(M, N)
    U = offsets[-1]
    return U - M.field.rank(A) if U else 0


def compose(g, f, field) -> tuple[np.ndarray, ...]:
    """g ∘ f vertexwise."""
    return tuple(field.matmul(gi, fi) for gi, fi in zip(g, f))


def is_iso_map(f, field) -> bool:
    return all(x.shape[0] == x.shape[1] and field.is_invertible(x) for x in f)


def _block_diag(maps, field) -> np.ndarray:
    m = sum(x.shape[0] for x in maps)
    out = field.zeros(m, m)
    o = 0
    for x in maps:
        k = x.shape[0]
        out[o : o + k, o : o + k] = x
        o += k
    return out


def endomorphism_algebra(M: Representation) -> MatrixAlgebra:
    H = hom_basis(M, M)
    return MatrixAlgebra(M.field, [_block_diag(f, M.field) for f in H.maps], size=M.total_dim)


def split_block_diag(X, dims) -> tuple[np.ndarray, ...]:
    out, o = [], 0
    for k in dims:
        out.append(X[o : o + k, o : o + k])
        o += k
    return tuple(out)


# -- indecomposability and decomposition ---------------------------------------


def is_indecomposable(M: Representation, seed: int = 0) -> bool:
    if M.is_zero():
        raise ValueError("the zero module is neither decomposable nor indecomposable")
    if not check_relations(M):
        raise RelationViolation("representation does not satisfy the defining relations")
    E = endomorphism_algebra(M)
    return E.is_local(np.random.default_rng(seed))


def restrict(M: Representation, bases) -> Representation:
    """The subrepresentation spanned by columns of bases[i] (assumed invariant)."""
    F = M.field
    mats = {}
    for arr in M.quiver.arrows:
        s, t = arr.source - 1, arr.target - 1
        img = F.matmul(M.mats[arr.name], bases[s])
        mats[arr.name] = F.solve_left(bases[t], img) if bases[t].shape[1] else F.zeros(0, bases[s].shape[1])
    dims = tuple(b.shape[1] for b in bases)
    return Representation(M.quiver, F, dims, mats)


def fitting_split(M: Representation, phi) -> Optional[tuple[Representation, Representation]]:
    """Split M = ker φ^N ⊕ im φ^N, or None if φ is nilpotent or invertible."""
    F = M.field
    N = max(M.total_dim, 1)
    powered = [F.power(x, N) if x.shape[0] else x for x in phi]
    rank = sum(F.rank(x) for x in powered)
    if rank == 0 or rank == M.total_dim:
        return None
    ker = [F.kernel_columns(x) if x.shape[0] else F.zeros(0, 0) for x in powered]
    img = [F.column_space(x) if x.shape[0] else F.zeros(0, 0) for x in powered]
    return restrict(M, ker), restrict(M, img)


EXHAUSTIVE_LIMIT = 1 << 14


def _find_split(M: Representation, rng, trials: int):
    """(X, Y) with M = X ⊕ Y nontrivially, or (None, End M) when M is indecomposable."""
    F = M.field
    H = hom_basis(M, M)
    E = MatrixAlgebra(F, [_block_diag(f, F) for f in H.maps], size=M.total_dim)
    if H.dim <= 1:
        return None, E
    # basis elements first: idempotent-like maps are common there
    for v in H.vectors:
        out = fitting_split(M, H.unflatten(v))
        if out:
            return out
    if E.is_local(rng):
        return None, E
    phi = E.splitting_element()
    if phi is not None:
        out = fitting_split(M, split_block_diag(phi, M.dims))
        if out:
            return out
    for _ in range(trials):
        out = fitting_split(M, H.combination(F.random(rng, (H.dim,))))
        if out:
            return out
    if isinstance(F, PrimeField) and F.p ** H.dim <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(F.p), repeat=H.dim):
            out = fitting_split(M, H.combination(coeffs))
            if out:
                return out
    raise FieldTooSmall(f"could not split a decomposable module {M!r}; retry over a larger prime field")


def _leaves(M: Representation, rng, trials: int) -> list[tuple[Representation, MatrixAlgebra]]:
    """Indecomposable summands of M, each with its endomorphism algebra."""
    if M.is_zero():
        return []
    X, Y = _find_split(M, rng, trials)
    if X is None:
        return [(M, Y)]
    return _leaves(X, rng, trials) + _leaves(Y, rng, trials)


def _indecomposable_summands(M: Representation, rng, trials: int) -> list[Representation]:
    return [X for X, _ in _leaves(M, rng, trials)]


def indecomposables_isomorphic(X: Representation, Y: Representation) -> bool:
    """Exact test for indecomposable X, Y: some g∘f with f: X→Y, g: Y→X is a unit.

    End(X) is local, so the pairing into End(X)/rad is nonzero iff it is
    nonzero on a pair of basis elements.
    """
    if X.dims != Y.dims:
        return False
    F = X.field
    HF = hom_basis(X, Y)
    if HF.dim == 0:
        return False
    HG = hom_basis(Y, X)
    m = X.total_dim
    for f in HF.maps:
        for g in HG.maps:
            gf = _block_diag(compose(g, f, F), F)
            if not F.is_zero(F.power(gf, m)):
                return True
    return False


def group_isoclasses(modules) -> list[tuple[Representation, int]]:
    """Group indecomposables into isoclasses; returns (representative, multiplicity)."""
    groups: list[list] = []
    for X in modules:
        for g in groups:
            if indecomposables_isomorphic(g[0], X):
                g[1] += 1
                break
        else:
            groups.append([X, 1])
    return [(g[0], g[1]) for g in groups]


def decompose(M: Representation, seed: int = 0, trials: int = 40) -> list[tuple[Representation, int]]:
    """Krull-Schmidt decomposition by repeated Fitting splitting.

    Returns indecomposable summands grouped by isoclass, with multiplicities.
    """
    if not check_relations(M):
        raise RelationViolation("representation does not satisfy the defining relations")
    rng = np.random.default_rng(seed)
    return group_isoclasses(_indecomposable_summands(M, rng, trials))


def decompose_with_algebras(M: Representation, seed: int = 0, trials: int = 40):
    """Like decompose, but yields (X, multiplicity, End X) triples."""
    if not check_relations(M):
        raise RelationViolation("representation does not satisfy the defining relations")
    rng = np.random.default_rng(seed)
    groups: list[list] = []
    for X, E in _leaves(M, rng, trials):
        for g in groups:
            if indecomposables_isomorphic(g[0], X):
                g[1] += 1
                break
        else:
            groups.append([X, 1, E])
    return [tuple(g) for g in groups]


def same_decomposition(A, B) -> bool:
    """Compare two decompose() results as multisets of isoclasses."""
    if sorted(m for _, m in A) != sorted(m for _, m in B) or len(A) != len(B):
        return False
    unused = list(B)
    for X, m in A:
        for k, (Y, n) in enumerate(unused):
            if m == n and indecomposables_isomorphic(X, Y):
                del unused[k]
                break
        else:
            return False
    return True


# -- isomorphism ---------------------------------------------------------------


@dataclass
class IsoDecision:
    result: bool
    path: str
    witness: Optional[tuple] = dc_field(default=None, repr=False)

    def __bool__(self):
        return self.result


def is_isomorphic(M: Representation, N: Representation, seed: int = 0, random_trials: int = 8) -> IsoDecision:
    _check_compatible(M, N)
    F = M.field
    if M.dims != N.dims:
        return IsoDecision(False, "dims")
    if M.is_zero():
        return IsoDecision(True, "zero")
    H = hom_basis(M, N)
    e_M, e_N, h_NM = hom_dim(M, M), hom_dim(N, N), hom_dim(N, M)
    if not (H.dim == e_M == e_N == h_NM):
        return IsoDecision(False, "rank-certificate")
    candidate = H.combination([1] * H.dim)
    if is_iso_map(candidate, F):
        return IsoDecision(True, "basis-sum", candidate)
    rng = np.random.default_rng(seed)
    for _ in range(random_trials):
        candidate = H.combination(F.random(rng, (H.dim,)))
        if is_iso_map(candidate, F):
            return IsoDecision(True, "random-element", candidate)
    if isinstance(F, PrimeField) and F.p ** H.dim <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(F.p), repeat=H.dim):
            candidate = H.combination(coeffs)
            if is_iso_map(candidate, F):
                return IsoDecision(True, "exhaustive", candidate)
        return IsoDecision(False, "exhaustive")
    same = same_decomposition(decompose(M, seed), decompose(N, seed))
    return IsoDecision(same, "krull-schmidt")
