"""Exact fields and dense linear algebra over them.

Two kinds of field are supported: prime fields F_p, whose matrices are numpy
``int64`` arrays reduced into [0, p), and the rationals, whose matrices are
numpy object arrays of :class:`fractions.Fraction`.  All matrices in scope are
small (a few hundred rows at most) so elimination is plain dense row
reduction with vectorised row operations.
"""

from __future__ import annotations

from fractions import Fraction

import numba
import numpy as np


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


class ExactField:
    characteristic: int
    dtype: object

    def reduce(self, A):
        raise NotImplementedError

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def random(self, rng: np.random.Generator, shape):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_json(obj) -> "ExactField":
        if obj.get("kind") == "prime":
            return PrimeField(int(obj["p"]))
        if obj.get("kind") == "rationals":
            return Rationals()
        raise ValueError(f"unknown field descriptor {obj!r}")

    # -- constructors -----------------------------------------------------

    def zeros(self, m: int, n: int) -> np.ndarray:
        return self.array(np.zeros((m, n), dtype=np.int64))

    def eye(self, n: int) -> np.ndarray:
        return self.array(np.eye(n, dtype=np.int64))

    # -- arithmetic ----------------------------------------------------------

    def matmul(self, A, B) -> np.ndarray:
        if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
            return self.zeros(A.shape[0], B.shape[1])
        return self.reduce(A @ B)

    def add(self, A, B):
        return self.reduce(A + B)

    def sub(self, A, B):
        return self.reduce(A - B)

    def scale(self, c, A):
        return self.reduce(A * c)

    def is_zero(self, A) -> bool:
        return not np.any(A != 0)

    def kron(self, A, B) -> np.ndarray:
        m, n = A.shape
        k, l = B.shape
        if 0 in (m, n, k, l):
            return self.zeros(m * k, n * l)
        return self.reduce(np.kron(A, B))

    # -- elimination ---------------------------------------------------------

    def rref(self, A) -> tuple[np.ndarray, list[int]]:
        R = self.array(A).copy()
        m, n = R.shape
        pivots: list[int] = []
        r = 0
        for c in range(n):
            if r == m:
                break
            nz = np.flatnonzero(R[r:, c] != 0)
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                R[[r, k]] = R[[k, r]]
            R[r] = self.reduce(R[r] * self.inverse(R[r, c]))
            col = R[:, c].copy()
            col[r] = 0
            if np.any(col != 0):
                R = self.reduce(R - np.outer(col, R[r]))
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self, A) -> int:
        A = self.array(A)
        if A.ndim < 2 or A.shape[0] == 0 or A.shape[1] == 0:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, A) -> np.ndarray:
        """Rows form a basis of {x : A x = 0}."""
        A = self.array(A)
        m, n = A.shape
        if m == 0:
            return self.eye(n)
        R, piv = self.rref(A)
        free = [c for c in range(n) if c not in set(piv)]
        N = self.zeros(len(free), n)
        for k, f in enumerate(free):
            N[k, f] = 1
            for i, pc in enumerate(piv):
                N[k, pc] = self.reduce(-R[i, f])
        return N

    def row_space(self, A) -> np.ndarray:
        """Reduced basis (rows) of the row space of A."""
        if A.shape[0] == 0:
            return A
        R, piv = self.rref(A)
        return R[: len(piv)]

    def column_space(self, A) -> np.ndarray:
        """Basis (as columns) of the image of A, chosen among A's own columns."""
        if A.shape[1] == 0 or A.shape[0] == 0:
            return self.zeros(A.shape[0], 0)
        _, piv = self.rref(A)
        return A[:, piv]

    def kernel_columns(self, A) -> np.ndarray:
        """Basis (as columns) of ker A."""
        return self.nullspace(A).T

    def inv(self, A) -> np.ndarray:
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        R, piv = self.rref(np.concatenate([A, self.eye(n)], axis=1))
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return R[:, n:]

    def is_invertible(self, A) -> bool:
        n = A.shape[0]
        return A.shape == (n, n) and self.rank(A) == n

    def solve_left(self, B, C) -> np.ndarray:
        """X with B X = C, for B of full column rank (C in the image of B)."""
        m, k = B.shape
        if k == 0:
            return self.zeros(0, C.shape[1])
        R, piv = self.rref(np.concatenate([B, C], axis=1))
        if piv[:k] != list(range(k)):
            raise ValueError("matrix does not have full column rank")
        if len(piv) > k:
            raise ValueError("right-hand side not in the column space")
        return R[:k, k:]

    def coordinates(self, basis_rows, vectors) -> np.ndarray:
        """Coefficients c with c @ basis_rows = vectors (each row of vectors)."""
        X = self.solve_left(basis_rows.T, vectors.T)
        return X.T

    def power(self, A, e: int) -> np.ndarray:
        result = self.eye(A.shape[0])
        base = A
        while e:
            if e & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            e >>= 1
        return result


@numba.njit(cache=True)
def _rref_mod_p(R, p):
    m, n = R.shape
    pivots = np.empty(min(m, n), np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if R[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = R[r, j]
                R[r, j] = R[piv, j]
                R[piv, j] = tmp
        # inverse by Fermat
        s = 1
        b = R[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                s = (s * b) % p
            b = (b * b) % p
            e >>= 1
        for j in range(c, n):
            R[r, j] = (R[r, j] * s) % p
        for i in range(m):
            if i != r:
                f = R[i, c]
                if f != 0:
                    for j in range(c, n):
                        R[i, j] = (R[i, j] - f * R[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


@numba.njit(cache=True)
def _matmul_mod(A, B, p):
    m, k = A.shape
    n = B.shape[1]
    C = np.zeros((m, n), np.int64)
    for i in range(m):
        for l in range(k):
            a = A[i, l]
            if a != 0:
                for j in range(n):
                    C[i, j] += a * B[l, j]
        for j in range(n):
            C[i, j] %= p
    return C


@numba.njit(cache=True)
def _matpow_mod(A, e, p):
    result = np.eye(A.shape[0], dtype=np.int64)
    base = A.copy()
    while e:
        if e & 1:
            result = _matmul_mod(result, base, p)
        base = _matmul_mod(base, base, p)
        e >>= 1
    return result


class PrimeField(ExactField):
    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.dtype = np.int64

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    @property
    def order(self) -> int:
        return self.p

    def reduce(self, A):
        return np.mod(A, self.p)

    def array(self, data) -> np.ndarray:
        arr = data if isinstance(data, np.ndarray) else np.array(data, dtype=object)
        if arr.dtype == object:
            p = self.p
            conv = lambda v: Fraction(v).numerator * pow(Fraction(v).denominator, -1, p) % p
            arr = np.array([conv(v) for v in arr.ravel()], dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64), self.p)

    def inverse(self, x):
        return pow(int(x), -1, self.p)

    def rref(self, A):
        R = np.ascontiguousarray(self.array(A), dtype=np.int64).copy()
        if R.shape[0] == 0 or R.shape[1] == 0:
            return R, []
        piv = _rref_mod_p(R, self.p)
        return R, [int(c) for c in piv]

    def power(self, A, e: int) -> np.ndarray:
        if A.shape[0] == 0:
            return A
        return _matpow_mod(np.ascontiguousarray(A, dtype=np.int64), int(e), self.p)

    def random(self, rng, shape):
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def generator(self) -> int:
        """A generator of the multiplicative group F_p^*."""
        p = self.p
        if p == 2:
            return 1
        phi = p - 1
        factors = [q for q in range(2, phi + 1) if phi % q == 0 and _is_prime(q)]
        for g in range(2, p):
            if all(pow(g, phi // q, p) != 1 for q in factors):
                return g
        raise AssertionError("no primitive root")

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}


class Rationals(ExactField):
    characteristic = 0
    dtype = object

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def reduce(self, A):
        return A

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.vectorize(Fraction, otypes=[object])(arr)
        return arr

    def inverse(self, x):
        return 1 / Fraction(x)

    def random(self, rng, shape, spread: int = 5):
        vals = rng.integers(-spread, spread + 1, size=shape)
        return self.array(vals)

    def to_json(self) -> dict:
        return {"kind": "rationals"}


def field_from_spec(spec) -> ExactField:
    """``"Q"``/``0`` give the rationals, a prime gives F_p."""
    if isinstance(spec, ExactField):
        return spec
    if spec in ("Q", "q", "rationals", 0, "0"):
        return Rationals()
    return PrimeField(int(spec))
