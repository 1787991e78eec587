"""Hom-order on the isoclasses of a fixed Δ-dimension vector.

M ⪯ N (N more degenerate) iff dim Hom(X, M) <= dim Hom(X, N) for every
indecomposable X of the harvested test set.  The zero point's module ⊕Δ(i)
is the most degenerate element; a dense orbit, if any, is the least.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..combinatorics import Triple
from ..errors import NotStabilized
from ..representations import hom_dim
from .bfs import Budget
from .harvest import Catalog, harvest_until_stable
from .isoclasses import enumerate_isoclasses


@dataclass
class DegenerationPoset:
    a: tuple
    d: tuple
    p: int
    elements: list  # Isoclass records, in code order
    hom_vectors: np.ndarray  # row k: dim Hom(X, element k) over the test set
    leq: np.ndarray  # leq[i, j]: element i ⪯ element j
    test_set: list  # Δ-dimension vectors of the test modules
    seed: int = 0

    def __len__(self):
        return len(self.elements)

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j): i ≺ j with nothing strictly between."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        edges = []
        for i, j in zip(*np.nonzero(lt)):
            if not np.any(lt[i] & lt[:, j]):
                edges.append((int(i), int(j)))
        return sorted(edges)

    def maxima(self) -> list[int]:
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        return [i for i in range(len(self)) if not lt[i].any()]

    def minima(self) -> list[int]:
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        return [j for j in range(len(self)) if not lt[:, j].any()]

    def is_antisymmetric(self) -> bool:
        both = self.leq & self.leq.T
        return bool(np.array_equal(both, np.eye(len(self), dtype=bool)))

    def orbit_sizes(self) -> list[int]:
        return [c.point_count for c in self.elements]

    def label(self, k: int) -> str:
        c = self.elements[k]
        parts = []
        for s in c.summands:
            prev = (0,) + s.module.dims[:-1]
            dd = "".join(str(x - y) for x, y in zip(s.module.dims, prev))
            parts += [dd] * s.multiplicity
        return "+".join(sorted(parts))

    def to_json(self) -> dict:
        return {
            "schema": "parabolic-orbits/degeneration-poset",
            "version": 1,
            "a": list(self.a),
            "d": list(self.d),
            "field": {"kind": "prime", "p": self.p},
            "seed": self.seed,
            "test_set": [list(v) for v in self.test_set],
            "elements": [
                {"id": k, "code": c.code, "summands": self.label(k), "orbit_size": c.point_count,
                 "hom_vector": self.hom_vectors[k].tolist()}
                for k, c in enumerate(self.elements)
            ],
            "hasse_edges": [{"below": i, "above": j} for i, j in self.hasse_edges()],
            "maxima": self.maxima(),
            "minima": self.minima(),
        }

    def to_dot(self) -> str:
        order = sorted(range(len(self)), key=lambda k: self.label(k))
        lines = ["digraph DegenerationPoset {", "  rankdir=BT;"]
        for k in order:
            lines.append(f'  e{k} [label="{self.label(k)}"];')
        for i, j in self.hasse_edges():
            lines.append(f"  e{i} -> e{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def hom_order(elements, test_modules) -> tuple[np.ndarray, np.ndarray]:
    H = np.array([[hom_dim(X, M) for X in test_modules] for M in elements], dtype=np.int64).reshape(len(elements), -1)
    leq = np.all(H[:, None, :] <= H[None, :, :], axis=2)
    return H, leq


def degeneration_poset(a, d, p: int, budget: Budget = Budget(), seed: int = 0, test_catalog: Catalog = None) -> DegenerationPoset:
    """Hom-order poset of M(a, d) over F_p.

    The test set is the stable harvest for a (NotStabilized if it cannot be
    reached within budget), unless a catalog is passed explicitly; an
    explicit catalog must be flagged stabilized.
    """
    a = Triple.of(a)
    d = tuple(int(v) for v in d)
    enum = enumerate_isoclasses(a, d, p, budget=budget, seed=seed)
    catalog = test_catalog if test_catalog is not None else harvest_until_stable(a, p, budget, seed)
    if not catalog.stabilized:
        raise NotStabilized("the test set of indecomposables may be incomplete")
    tests = [e.module for e in catalog.entries]
    H, leq = hom_order([c.module for c in enum.classes], tests)
    return DegenerationPoset(tuple(a), d, p, list(enum.classes), H, leq, catalog.delta_dims(), seed)
