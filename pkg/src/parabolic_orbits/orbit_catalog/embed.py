"""The embedding of Δ-filtered A(ã)-modules into A(a)-modules for ã <= a.

The monotone surjection f : {1, .., b3} -> {1, .., b̃3} sends the first ã_{j+1}
vertices of block j+1 of a onto block j+1 of ã in order and the remaining
ones to the last vertex b̃_{j+1}.  Then M_i = M̃_{f(i)}, with α_i the identity
where f(i+1) = f(i) and α̃_{f(i)} where f(i+1) = f(i) + 1; β maps are copied.

The formula only makes sense with domain {1, .., b3} (the vertices of the
bigger quiver), which is the reading implemented here.
"""

from __future__ import annotations

from ..combinatorics import Triple
from ..errors import NotComparable, ShapeMismatch
from ..quiver_algebra import alpha, beta, build_quiver
from ..representations import Representation


def vertex_map(a_small, a_big) -> tuple[int, ...]:
    """(f(1), ..., f(t)) for the big quiver's vertices."""
    s, g = Triple.of(a_small), Triple.of(a_big)
    if not s <= g:
        raise NotComparable(f"{tuple(s)} is not entrywise <= {tuple(g)}")
    bs, bg = s.b, g.b
    f = []
    for j in range(3):
        for i in range(bg[j] + 1, bg[j + 1] + 1):
            f.append(i - bg[j] + bs[j] if i - bg[j] <= s[j] else bs[j + 1])
    return tuple(f)


def zero_delta_positions(a_small, a_big) -> tuple[int, ...]:
    """Vertices i of the big quiver with f(i) = f(i - 1): there DeltaDim is 0."""
    f = vertex_map(a_small, a_big)
    return tuple(i + 1 for i in range(1, len(f)) if f[i] == f[i - 1])


def embed(a_small, a_big, M: Representation) -> Representation:
    s, g = Triple.of(a_small), Triple.of(a_big)
    f = vertex_map(s, g)
    if tuple(M.quiver.a) != tuple(s):
        raise ShapeMismatch(f"module lives over A{tuple(M.quiver.a)}, expected A{tuple(s)}")
    Q = build_quiver(g)
    F = M.field
    dims = tuple(M.dims[v - 1] for v in f)
    mats = {}
    for i in range(1, g.t):
        if f[i] == f[i - 1]:
            mats[alpha(i)] = F.eye(dims[i - 1])
        else:
            mats[alpha(i)] = M.mats[alpha(f[i - 1])]
    _, b1, b2, _ = g.b
    _, c1, c2, _ = s.b
    mats[beta(b1)] = M.mats[beta(c1)]
    mats[beta(b2)] = M.mats[beta(c2)]
    return Representation(Q, F, dims, mats)
