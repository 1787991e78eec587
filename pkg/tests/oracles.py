"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's linear algebra or orbit code: matrices
are lists or plain integer numpy arrays reduced mod p, and group actions
are carried out by enumerating whole groups.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def _block_sizes(a, d):
    """Coarse block sizes (r1, r2, r3) and the coarse block of each of the n coordinates."""
    sizes = []
    k = 0
    for ak in a:
        sizes.append(sum(d[k : k + ak]))
        k += ak
    coarse = [c for c, r in enumerate(sizes) for _ in range(r)]
    fine = [f for f, v in enumerate(d) for _ in range(v)]
    return sizes, coarse, fine


def nilradical_positions(a, d):
    _, coarse, _ = _block_sizes(a, d)
    n = len(coarse)
    return [(i, j) for i in range(n) for j in range(n) if coarse[i] < coarse[j]]


def parabolic_positions(d):
    fine = [f for f, v in enumerate(d) for _ in range(v)]
    n = len(fine)
    return [(i, j) for i in range(n) for j in range(n) if fine[i] <= fine[j]]


def dims_by_counting(a, d):
    """(dim P, dim Q_u, dim [q_u, q_u]) from explicit matrix positions."""
    _, coarse, _ = _block_sizes(a, d)
    n = len(coarse)
    derived = sum(1 for i in range(n) for j in range(n) if coarse[i] == 0 and coarse[j] == 2)
    return len(parabolic_positions(d)), len(nilradical_positions(a, d)), derived


def matmul(A, B, p):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][l] * B[l][j] for l in range(m)) % p for j in range(k)] for i in range(n)]


def inverse(A, p):
    n = len(A)
    M = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] % p), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        s = pow(M[c][c], p - 2, p)
        M[c] = [x * s % p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def parabolic_group(d, p):
    """Every element of P(F_p) for the flag with fine block sizes d."""
    pos = parabolic_positions(d)
    n = sum(d)
    for vals in itertools.product(range(p), repeat=len(pos)):
        g = [[0] * n for _ in range(n)]
        for (i, j), v in zip(pos, vals):
            g[i][j] = v
        if inverse(g, p) is not None:
            yield g


def naive_orbits(a, d, p):
    """Sorted orbit sizes of P(F_p) on q_u(F_p), by applying the whole group."""
    pos = nilradical_positions(a, d)
    n = sum(d)
    group = [(g, inverse(g, p)) for g in parabolic_group(d, p)]
    key = lambda X: tuple(X[i][j] for i, j in pos)
    seen, sizes = set(), []
    for vals in itertools.product(range(p), repeat=len(pos)):
        if vals in seen:
            continue
        X = [[0] * n for _ in range(n)]
        for (i, j), v in zip(pos, vals):
            X[i][j] = v
        orbit = {key(matmul(matmul(g, X, p), gi, p)) for g, gi in group}
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def brute_homs(M, N, p):
    """All homomorphisms M -> N, enumerated entry by entry (tiny modules only)."""
    Q = M.quiver
    shapes = [(N.dims[i], M.dims[i]) for i in range(Q.t)]
    sizes = [r * c for r, c in shapes]
    A = {k: np.asarray(v, dtype=np.int64) for k, v in M.mats.items()}
    B = {k: np.asarray(v, dtype=np.int64) for k, v in N.mats.items()}
    out = []
    for vals in itertools.product(range(p), repeat=sum(sizes)):
        f, k = [], 0
        for (r, c), s in zip(shapes, sizes):
            f.append(np.array(vals[k : k + s], dtype=np.int64).reshape(r, c))
            k += s
        if all(
            not np.any((f[arr.target - 1] @ A[arr.name] - B[arr.name] @ f[arr.source - 1]) % p)
            for arr in Q.arrows
        ):
            out.append(f)
    return out


def brute_hom_dim(M, N, p):
    count = len(brute_homs(M, N, p))
    return round(math.log(count, p))


def linear_hom_dim(M, N, p):
    """dim Hom(M, N) from the equations f_t A = B f_s written out entry by entry.

    The rank is taken by sympy over GF(p).
    """
    from sympy.polys.domains import GF
    from sympy.polys.matrices import DomainMatrix

    Q = M.quiver
    offsets, k = [], 0
    for i in range(Q.t):
        offsets.append(k)
        k += N.dims[i] * M.dims[i]
    var = lambda v, r, c: offsets[v] + r * M.dims[v] + c
    rows = []
    for arr in Q.arrows:
        s, t = arr.source - 1, arr.target - 1
        A = np.asarray(M.mats[arr.name], dtype=np.int64)
        B = np.asarray(N.mats[arr.name], dtype=np.int64)
        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                row = [0] * k
                for l in range(M.dims[t]):
                    row[var(t, r, l)] += int(A[l, c])
                for l in range(N.dims[s]):
                    row[var(s, l, c)] -= int(B[r, l])
                rows.append([x % p for x in row])
    if k == 0:
        return 0
    if not rows:
        return k
    dm = DomainMatrix([[GF(p)(x) for x in row] for row in rows], (len(rows), k), GF(p))
    return k - dm.rank()


def brute_is_indecomposable(M, p):
    """True iff the only idempotent endomorphisms are 0 and 1."""
    ends = brute_homs(M, M, p)
    idempotents = 0
    for f in ends:
        if all(np.array_equal(x @ x % p, x) for x in f):
            idempotents += 1
    return M.total_dim > 0 and idempotents == 2
