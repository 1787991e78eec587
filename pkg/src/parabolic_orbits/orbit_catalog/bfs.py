"""Brute-force P(d)(F_p)-orbits on q_u(a, d)(F_p).

The conjugation action is linear, so every group generator becomes a D x D
matrix over F_p on the point coordinates.  Most rows of that matrix are
unit rows; only the others are stored, and a generator is applied to an
encoded point by patching the affected base-p digits.  Orbits are found by
breadth-first search with a per-state label array.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numba
import numpy as np

from ..combinatorics import Triple
from ..errors import BudgetExceeded
from ..fields import PrimeField
from .dictionary import Layout, decode, layout

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Budget:
    states: int = 10**6
    seconds: Optional[float] = None
    memory_bytes: Optional[int] = None

    def check_states(self, required: int, what: str = "states"):
        if required > self.states:
            raise BudgetExceeded(f"{what}: {required} required, budget allows {self.states}", required=required)

    def check_memory(self, required: int):
        if self.memory_bytes is not None and required > self.memory_bytes:
            raise BudgetExceeded(f"memory: ~{required} bytes required, budget allows {self.memory_bytes}", required=required)

    def deadline(self) -> Optional[float]:
        return None if self.seconds is None else time.monotonic() + self.seconds

    def to_json(self) -> dict:
        return {"states": self.states, "seconds": self.seconds, "memory_bytes": self.memory_bytes}


def check_deadline(deadline: Optional[float]):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("time budget exhausted")


def parabolic_generators(d, p: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """(g, g^{-1}) pairs generating P(d)(F_p).

    Torus elements diag(1, .., λ, .., 1) for a generator λ of F_p^*, the
    simple upper unipotents e_{j,j+1}(1), and the simple lower unipotents
    inside each diagonal block.  The upper unitriangular group is generated
    by the simple ones; the lower ones complete each GL_{d_i}.
    """
    F = PrimeField(p)
    n = int(sum(d))
    gens = []
    lam = F.generator()
    if p > 2:
        lam_inv = pow(lam, -1, p)
        for j in range(n):
            g = np.eye(n, dtype=np.int64)
            gi = np.eye(n, dtype=np.int64)
            g[j, j], gi[j, j] = lam, lam_inv
            gens.append((g, gi))

    def elementary(i, j):
        g = np.eye(n, dtype=np.int64)
        gi = np.eye(n, dtype=np.int64)
        g[i, j], gi[i, j] = 1, p - 1
        return g, gi

    for j in range(n - 1):
        gens.append(elementary(j, j + 1))
    start = 0
    for size in d:
        for j in range(start, start + size - 1):
            gens.append(elementary(j + 1, j))
        start += size
    return gens


def induced_action(lay: Layout, g: np.ndarray, ginv: np.ndarray, p: int) -> np.ndarray:
    """Matrix of x -> g x g^{-1} on the q_u coordinates."""
    R, C = lay.rows, lay.cols
    # (g E_{r_l c_l} g^{-1})[r_k, c_k] = g[r_k, r_l] * ginv[c_l, c_k]
    return (g[np.ix_(R, R)] * ginv[np.ix_(C, C)].T) % p


def sparse_generators(lay: Layout, p: int):
    """CSR-style arrays describing the non-unit rows of every generator."""
    g_ptr, t_idx, t_ptr, s_idx, s_coef = [0], [], [0], [], []
    D = lay.dim
    eye = np.eye(D, dtype=np.int64)
    for g, gi in parabolic_generators(lay.d, p):
        A = induced_action(lay, g, gi, p)
        changed = np.flatnonzero(np.any(A != eye, axis=1))
        if changed.size == 0:
            continue
        for k in changed:
            nz = np.flatnonzero(A[k])
            t_idx.append(int(k))
            s_idx.extend(int(v) for v in nz)
            s_coef.extend(int(A[k, v]) for v in nz)
            t_ptr.append(len(s_idx))
        g_ptr.append(len(t_idx))
    as_arr = lambda v: np.array(v, dtype=np.int64)
    return as_arr(g_ptr), as_arr(t_idx), as_arr(t_ptr), as_arr(s_idx), as_arr(s_coef)


@numba.njit(cache=True)
def _apply(code, digits, g, p, pows, g_ptr, t_idx, t_ptr, s_idx, s_coef):
    new = code
    for ti in range(g_ptr[g], g_ptr[g + 1]):
        k = t_idx[ti]
        v = 0
        for si in range(t_ptr[ti], t_ptr[ti + 1]):
            v += s_coef[si] * digits[s_idx[si]]
        v %= p
        new += (v - digits[k]) * pows[k]
    return new


@numba.njit(cache=True)
def _bfs_kernel(n_states, p, D, pows, g_ptr, t_idx, t_ptr, s_idx, s_coef, labels, queue):
    n_gens = g_ptr.shape[0] - 1
    cap = 64
    reps = np.empty(cap, np.int64)
    sizes = np.empty(cap, np.int64)
    digits = np.empty(D, np.int64)
    n_orbits = 0
    for start in range(n_states):
        if labels[start] >= 0:
            continue
        labels[start] = n_orbits
        queue[0] = start
        head = 0
        tail = 1
        while head < tail:
            code = queue[head]
            head += 1
            c = code
            for k in range(D):
                digits[k] = c % p
                c //= p
            for g in range(n_gens):
                new = _apply(code, digits, g, p, pows, g_ptr, t_idx, t_ptr, s_idx, s_coef)
                if labels[new] < 0:
                    labels[new] = n_orbits
                    queue[tail] = new
                    tail += 1
        if n_orbits == cap:
            cap *= 2
            r2 = np.empty(cap, np.int64)
            s2 = np.empty(cap, np.int64)
            r2[:n_orbits] = reps[:n_orbits]
            s2[:n_orbits] = sizes[:n_orbits]
            reps, sizes = r2, s2
        reps[n_orbits] = start
        sizes[n_orbits] = tail
        n_orbits += 1
    return reps[:n_orbits], sizes[:n_orbits]


@dataclass
class OrbitReport:
    a: tuple
    d: tuple
    q: int
    dim_qu: int
    orbit_count: int
    sizes: list  # in order of representative codes
    representative_codes: list
    budget: Budget = dc_field(default_factory=Budget)
    labels: Optional[np.ndarray] = dc_field(default=None, repr=False)

    @property
    def representatives(self):
        lay = layout(self.a, self.d)
        return [decode(lay, c, self.q) for c in self.representative_codes]

    def size_multiset(self) -> list:
        return sorted(self.sizes)

    def to_json(self) -> dict:
        return {
            "schema": "parabolic-orbits/orbit-report",
            "version": SCHEMA_VERSION,
            "a": list(self.a),
            "d": list(self.d),
            "q": self.q,
            "field": {"kind": "prime", "p": self.q},
            "dim_qu": self.dim_qu,
            "states": self.q**self.dim_qu,
            "orbit_count": self.orbit_count,
            "orbit_sizes": [int(s) for s in self.size_multiset()],
            "orbits": [
                {"representative_code": int(c), "size": int(s), "representative": rep.to_json()}
                for c, s, rep in zip(self.representative_codes, self.sizes, self.representatives)
            ],
            "seed": None,
            "budget": self.budget.to_json(),
        }


def count_orbits_bruteforce(a, d, q: int, budget: Budget = Budget(), keep_labels: bool = False) -> OrbitReport:
    PrimeField(q)  # validates primality
    lay = layout(Triple.of(a), d)
    N = lay.state_count(q)
    budget.check_states(N)
    qdtype = np.int32 if N < 2**31 else np.int64
    budget.check_memory(N * (4 + np.dtype(qdtype).itemsize))
    pows = np.array([q**k for k in range(lay.dim)], dtype=np.int64)
    arrays = sparse_generators(lay, q)
    labels = np.full(N, -1, dtype=np.int32)
    queue = np.empty(N, dtype=qdtype)
    reps, sizes = _bfs_kernel(N, q, lay.dim, pows, *arrays, labels, queue)
    del queue
    assert int(sizes.sum()) == N
    return OrbitReport(
        a=tuple(lay.a),
        d=tuple(lay.d),
        q=q,
        dim_qu=lay.dim,
        orbit_count=len(reps),
        sizes=[int(s) for s in sizes],
        representative_codes=[int(c) for c in reps],
        budget=budget,
        labels=labels if keep_labels else None,
    )
