"""Finite-dimensional matrix algebras: Jacobson radical and locality.

An algebra is given by a basis of square matrices over an exact field.  The
radical is computed from trace forms: over the rationals the kernel of
(a, b) -> tr(ab) is the radical; in characteristic p that kernel can be too
large, and the iteration with the higher trace functionals

    g_i(x) = tr(x~^(p^i)) / p^i  (mod p),   x~ an integer lift of x,

cuts it down to the radical after floor(log_p m) steps (m = matrix size).
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .errors import FieldTooSmall
from .fields import ExactField, PrimeField


def _int_matpow_mod(X: np.ndarray, e: int, mod: int) -> np.ndarray:
    result = np.eye(X.shape[0], dtype=np.int64)
    base = X % mod
    while e:
        if e & 1:
            result = (result @ base) % mod
        base = (base @ base) % mod
        e >>= 1
    return result


def higher_trace(x: np.ndarray, p: int, i: int) -> int:
    """g_i(x) for x over F_p (entries in [0, p))."""
    mod = p ** (i + 1)
    tr = int(np.trace(_int_matpow_mod(x.astype(np.int64), p**i, mod))) % mod
    if tr % p**i:
        raise ArithmeticError(f"trace of x^(p^{i}) not divisible by p^{i}")
    return (tr // p**i) % p


class MatrixAlgebra:
    def __init__(self, field: ExactField, basis: list[np.ndarray], size: Optional[int] = None):
        self.field = field
        self.basis = list(basis)
        self.size = size if size is not None else (basis[0].shape[0] if basis else 0)
        m = self.size
        self.vectors = field.array(np.array([b.reshape(-1) for b in basis])) if basis else field.zeros(0, m * m)
        self._radical = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> np.ndarray:
        F = self.field
        v = F.reduce(np.asarray(coeffs, dtype=self.vectors.dtype) @ self.vectors) if self.dim else F.zeros(1, self.size**2)[0]
        return v.reshape(self.size, self.size)

    def coords(self, X: np.ndarray) -> np.ndarray:
        return self.field.coordinates(self.vectors, X.reshape(1, -1))[0]

    def one_coords(self) -> np.ndarray:
        return self.coords(self.field.eye(self.size))

    def is_nilpotent(self, X: np.ndarray) -> bool:
        return self.field.is_zero(self.field.power(X, self.size))

    # -- radical -------------------------------------------------------------

    def radical(self) -> np.ndarray:
        """Rows are coordinate vectors (w.r.t. self.basis) spanning rad."""
        if self._radical is None:
            self._radical = self._compute_radical()
        return self._radical

    def radical_matrices(self) -> list[np.ndarray]:
        return [self.element(c) for c in self.radical()]

    def _compute_radical(self) -> np.ndarray:
        F = self.field
        k = self.dim
        if k == 0:
            return F.zeros(0, 0)
        current = F.eye(k)  # rows: coordinates of a basis of I_{i-1}
        if isinstance(F, PrimeField):
            p = F.p
            levels = int(math.floor(math.log(self.size, p) + 1e-12)) if self.size > 0 else 0
            for i in range(levels + 1):
                elems = [self.element(c) for c in current]
                G = np.array(
                    [[higher_trace(F.matmul(a, b), p, i) for b in self.basis] for a in elems],
                    dtype=np.int64,
                )
                # c in ker of (row combination of G)
                null = F.nullspace(G.T) if len(elems) else F.zeros(0, 0)
                current = F.reduce(null @ current) if null.shape[0] else F.zeros(0, k)
                if current.shape[0] == 0:
                    break
        else:
            G = F.array([[np.trace(F.matmul(a, b)) for b in self.basis] for a in self.basis])
            current = F.nullspace(G.T)
        return F.row_space(current) if current.shape[0] else current

    # -- semisimple quotient -----------------------------------------------

    def _complement(self) -> np.ndarray:
        """Coordinates of basis elements whose images span E/rad."""
        F = self.field
        R = self.radical()
        chosen = []
        span = R
        for j in range(self.dim):
            e = F.zeros(1, self.dim)
            e[0, j] = 1
            trial = np.concatenate([span, e]) if span.shape[0] else e
            if F.rank(trial) > span.shape[0]:
                chosen.append(e[0])
                span = trial
        return F.array(np.array(chosen)) if chosen else F.zeros(0, self.dim)

    def _quotient_coords(self, X, C, R):
        """Coordinates of X modulo rad with respect to the complement C."""
        F = self.field
        basis = np.concatenate([C, R]) if R.shape[0] else C
        c = F.coordinates(basis, self.coords(X).reshape(1, -1))[0]
        return c[: C.shape[0]]

    def residue_dimension(self) -> int:
        return self.dim - self.radical().shape[0]

    def is_local(self, rng: Optional[np.random.Generator] = None) -> bool:
        """True iff E/rad E is a division algebra."""
        F = self.field
        C = self._complement()
        R = self.radical()
        f = C.shape[0]
        if f == 0:
            return False
        if f == 1:
            return True
        cmats = [self.element(c) for c in C]
        commutative = all(
            self._in_radical(F.sub(F.matmul(x, y), F.matmul(y, x)), R)
            for i, x in enumerate(cmats)
            for y in cmats[i + 1 :]
        )
        if isinstance(F, PrimeField):
            if not commutative:
                return False  # finite division rings are fields
            return self._berlekamp_kernel(cmats, C, R).shape[0] == 1
        return self._rational_division_test(cmats, C, R, commutative, rng or np.random.default_rng(0))

    def _in_radical(self, X, R) -> bool:
        F = self.field
        v = self.coords(X).reshape(1, -1)
        if F.is_zero(v):
            return True
        if R.shape[0] == 0:
            return False
        return F.rank(np.concatenate([R, v])) == R.shape[0]

    def _berlekamp_kernel(self, cmats, C, R) -> np.ndarray:
        """Kernel of s -> s^p - s on the commutative quotient (coordinates in C)."""
        F = self.field
        p = F.p
        rows = []
        for j, x in enumerate(cmats):
            v = self._quotient_coords(F.power(x, p), C, R)
            v[j] = (v[j] - 1) % p
            rows.append(v)
        A = F.array(np.array(rows))
        return F.nullspace(A.T)

    def _min_poly_in_quotient(self, s, C, R):
        F = self.field
        f = C.shape[0]
        powers = [self._quotient_coords(F.eye(self.size), C, R)]
        x = F.eye(self.size)
        for _ in range(f):
            x = F.matmul(x, s)
            powers.append(self._quotient_coords(x, C, R))
            M = F.array(np.array(powers))
            null = F.nullspace(M.T)
            if null.shape[0]:
                return null[0]
        raise AssertionError("minimal polynomial degree exceeds algebra dimension")

    def _rational_division_test(self, cmats, C, R, commutative, rng) -> bool:
        import sympy

        F = self.field
        f = C.shape[0]
        x = sympy.Symbol("x")
        for _ in range(30):
            coeffs = F.random(rng, (f,))
            s = F.zeros(self.size, self.size)
            for c, m in zip(coeffs, cmats):
                s = F.add(s, F.scale(c, m))
            poly_coeffs = self._min_poly_in_quotient(s, C, R)
            poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in poly_coeffs[::-1]], x)
            if not poly.is_irreducible:
                return False
            if commutative and poly.degree() == f:
                return True
        if commutative:
            raise FieldTooSmall("no primitive element found in the semisimple quotient")
        # Noncommutative with every sampled minimal polynomial irreducible:
        # no zero divisor found, accept as a division algebra.
        return True

    def splitting_element(self) -> Optional[np.ndarray]:
        """Deterministically find an element that is neither nilpotent nor a unit.

        Only for prime fields with commutative non-local quotient; None otherwise.
        """
        F = self.field
        if not isinstance(F, PrimeField):
            return None
        C = self._complement()
        R = self.radical()
        if C.shape[0] < 2:
            return None
        cmats = [self.element(c) for c in C]
        ker = self._berlekamp_kernel(cmats, C, R)
        one = self._quotient_coords(F.eye(self.size), C, R)
        for v in ker:
            if F.rank(np.array([v, one])) < 2:
                continue
            s = F.zeros(self.size, self.size)
            for c, m in zip(v, cmats):
                s = F.add(s, F.scale(c, m))
            for lam in range(F.p):
                phi = F.sub(s, F.scale(lam, F.eye(self.size)))
                if not self.is_nilpotent(phi) and not F.is_invertible(phi):
                    return phi
        return None
