"""Auslander-Reiten quiver of the Δ-filtered modules, from a stable harvest.

This replaces knitting from the projectives: once the harvest has found every
indecomposable, irreducible maps are read off as rad(X, Y) / rad²(X, Y) inside
the additive category of the catalog.  The translate τX is the unique Y
whose arrows out match the arrows into X and whose dimension vector solves
the mesh dim Y + dim X = Σ (middle terms).  Nodes without a translate must be
the indecomposable projectives P(i), which is checked separately: P(i) is
recognised by dim Hom(P(i), M) = dim M_i on the whole catalog.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from ..combinatorics import Triple
from ..errors import NotStabilized
from ..representations import compose, endomorphism_algebra, hom_basis, hom_dim, split_block_diag
from .bfs import Budget
from .harvest import Catalog, CatalogEntry, harvest_indecomposables, harvest_until_stable


@dataclass
class ARQuiver:
    a: tuple
    p: int
    nodes: list  # CatalogEntry, sorted by Δ-dimension vector
    arrows: dict  # (i, j) -> dim_k rad(X_i, X_j) / rad²(X_i, X_j)
    translate: dict  # i -> j means τ(X_i) = X_j
    ambiguous: list = dc_field(default_factory=list)  # nodes with several mesh candidates
    bound: tuple = ()
    seed: int = 0

    def successors(self, i) -> Counter:
        return Counter({j: m for (s, j), m in self.arrows.items() if s == i})

    def predecessors(self, j) -> Counter:
        return Counter({i: m for (i, t), m in self.arrows.items() if t == j})

    def mesh_defect(self, i) -> Optional[np.ndarray]:
        """dim τX + dim X - Σ (middle terms) for a node with a translate."""
        if i not in self.translate:
            return None
        dim = lambda k: np.array(self.nodes[k].module.dims)
        middle = sum((m * dim(k) for k, m in self.predecessors(i).items()), np.zeros(len(dim(i)), dtype=int))
        return dim(self.translate[i]) + dim(i) - middle

    def mesh_additive(self) -> bool:
        return all(not np.any(self.mesh_defect(i)) for i in self.translate)

    def projective_nodes(self) -> list[int]:
        """Nodes without a translate (the Ext-projectives of the Δ-filtered category)."""
        return [i for i in range(len(self.nodes)) if i not in self.translate and i not in self.ambiguous]

    def injective_nodes(self) -> list[int]:
        """Nodes that are nobody's translate."""
        hit = set(self.translate.values())
        return [i for i in range(len(self.nodes)) if i not in hit]

    def to_json(self) -> dict:
        return {
            "schema": "parabolic-orbits/ar-quiver",
            "version": 1,
            "a": list(self.a),
            "bound": list(self.bound),
            "field": {"kind": "prime", "p": self.p},
            "seed": self.seed,
            "nodes": [{"id": i, "delta_dim": list(n.delta_dim), "dims": list(n.module.dims), "code": n.code}
                      for i, n in enumerate(self.nodes)],
            "arrows": [{"source": i, "target": j, "multiplicity": m} for (i, j), m in sorted(self.arrows.items())],
            "translate": [{"node": i, "tau": j} for i, j in sorted(self.translate.items())],
            "ambiguous": sorted(self.ambiguous),
            "mesh_additive": self.mesh_additive(),
        }

    def to_dot(self) -> str:
        lines = ["digraph ARQuiver {", "  rankdir=LR;"]
        for i, n in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{n.label}"];')
        for (i, j), m in sorted(self.arrows.items()):
            extra = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  n{i} -> n{j}{extra};")
        for i, j in sorted(self.translate.items()):
            lines.append(f"  n{i} -> n{j} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _radical_maps(X: CatalogEntry, Y: CatalogEntry, same: bool) -> list:
    """A basis of rad(X, Y), as tuples of vertex maps."""
    if not same:
        return hom_basis(X.module, Y.module).maps
    E = endomorphism_algebra(X.module)
    return [split_block_diag(R, X.module.dims) for R in E.radical_matrices()]


def _flatten(f) -> np.ndarray:
    parts = [x.reshape(-1) for x in f]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def build_ar_quiver(catalog: Catalog) -> ARQuiver:
    nodes = sorted(catalog.entries, key=lambda e: e.delta_dim)
    F = nodes[0].module.field if nodes else None
    k = len(nodes)
    rad = [[_radical_maps(nodes[i], nodes[j], i == j) for j in range(k)] for i in range(k)]
    arrows = {}
    for i in range(k):
        for j in range(k):
            if not rad[i][j]:
                continue
            products = [
                _flatten(compose(g, f, F))
                for z in range(k)
                for f in rad[i][z]
                for g in rad[z][j]
            ]
            r2 = F.rank(np.array(products)) if products else 0
            m = len(rad[i][j]) - r2
            if m:
                arrows[(i, j)] = m
    quiver = ARQuiver(tuple(catalog.a), catalog.p, nodes, arrows, {}, [], tuple(catalog.bound), catalog.seed)
    dims = [np.array(n.module.dims) for n in nodes]
    for i in range(k):
        pred = quiver.predecessors(i)
        if not pred:
            continue
        target = sum(m * dims[j] for j, m in pred.items()) - dims[i]
        candidates = [
            j for j in range(k)
            if j != i and np.array_equal(dims[j], target) and quiver.successors(j) == pred
        ]
        if len(candidates) == 1:
            quiver.translate[i] = candidates[0]
        elif len(candidates) > 1:
            quiver.ambiguous.append(i)
    return quiver


def projective_vertices(quiver: ARQuiver) -> dict[int, int]:
    """node -> vertex i for nodes X with dim Hom(X, M) = dim M_i for every node M."""
    out = {}
    modules = [n.module for n in quiver.nodes]
    for x, X in enumerate(modules):
        homs = np.array([hom_dim(X, M) for M in modules])
        dims = np.array([M.dims for M in modules])
        for i in range(dims.shape[1]):
            if np.array_equal(homs, dims[:, i]):
                out[x] = i + 1
                break
    return out


def ar_quiver(a, bound, p: int, budget: Budget = Budget(), seed: int = 0) -> ARQuiver:
    """AR quiver of the harvested indecomposables; the harvest must be stable within bound."""
    a = Triple.of(a)
    catalog = harvest_indecomposables(a, bound, p, budget, seed)
    if not catalog.stabilized:
        raise NotStabilized(f"harvest for a={tuple(a)} is not stable at bound {tuple(bound)}")
    return build_ar_quiver(catalog)


def ar_quiver_stable(a, p: int, budget: Budget = Budget(), seed: int = 0) -> ARQuiver:
    return build_ar_quiver(harvest_until_stable(a, p, budget, seed))
