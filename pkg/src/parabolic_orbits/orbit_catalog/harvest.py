"""Catalogs of indecomposable Δ-filtered modules, harvested from isoclasses.

Every indecomposable with Δ-dimension vector d' shows up as an isoclass of
M(a, d'), so the catalog up to a bound is the union of the indecomposable
isoclasses over all d' <= bound (zero entries allowed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..combinatorics import Triple
from ..errors import BudgetExceeded, LengthMismatch, NotStabilized
from ..representations import Representation
from .bfs import Budget, check_deadline
from .isoclasses import enumerate_isoclasses


@dataclass
class CatalogEntry:
    delta_dim: tuple[int, ...]
    module: Representation
    code: int  # code of the module's point in q_u(a, delta_dim)
    dim_end: int
    residue_degree: int

    @property
    def label(self) -> str:
        return "".join(str(v) for v in self.delta_dim) if max(self.delta_dim) < 10 else ",".join(map(str, self.delta_dim))

    def to_json(self) -> dict:
        return {
            "delta_dim": list(self.delta_dim),
            "code": self.code,
            "dim_end": self.dim_end,
            "residue_degree": self.residue_degree,
            "module": self.module.to_json(),
        }


@dataclass
class Catalog:
    a: tuple
    bound: tuple
    p: int
    entries: list
    stabilized: bool
    seed: int = 0
    budget: Budget = dc_field(default_factory=Budget)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def delta_dims(self) -> list[tuple[int, ...]]:
        return [e.delta_dim for e in self.entries]

    def restricted(self, bound) -> "Catalog":
        """Entries with Δ-dimension vector <= bound."""
        bound = tuple(bound)
        keep = [e for e in self.entries if all(x <= y for x, y in zip(e.delta_dim, bound))]
        return Catalog(self.a, bound, self.p, keep, False, self.seed, self.budget)

    def to_json(self) -> dict:
        return {
            "schema": "parabolic-orbits/catalog",
            "version": 1,
            "a": list(self.a),
            "bound": list(self.bound),
            "field": {"kind": "prime", "p": self.p},
            "stabilized": self.stabilized,
            "seed": self.seed,
            "budget": self.budget.to_json(),
            "indecomposables": [e.to_json() for e in self.entries],
        }


def sub_vectors(bound) -> list[tuple[int, ...]]:
    """Nonzero vectors 0 <= d' <= bound, in lexicographic order."""
    return [v for v in itertools.product(*(range(b + 1) for b in bound)) if any(v)]


def harvest_indecomposables(a, bound, p: int, budget: Budget = Budget(), seed: int = 0) -> Catalog:
    """All indecomposable isoclasses with Δ-dimension vector <= bound.

    The catalog is flagged stabilized when the last increment of the bound
    (from bound - 1, floored at 0, to bound) added nothing.
    """
    a = Triple.of(a)
    bound = tuple(int(v) for v in bound)
    if len(bound) != a.t:
        raise LengthMismatch(f"bound has {len(bound)} entries, expected {a.t}")
    deadline = budget.deadline()
    entries = []
    for d in sub_vectors(bound):
        check_deadline(deadline)
        enum = enumerate_isoclasses(a, d, p, budget=budget, seed=seed)
        for c in enum.classes:
            if c.is_indecomposable:
                entries.append(CatalogEntry(d, c.module, c.code, c.dim_end, c.summands[0].residue_degree))
    previous = tuple(max(v - 1, 0) for v in bound)
    stabilized = all(all(x <= y for x, y in zip(e.delta_dim, previous)) for e in entries)
    return Catalog(tuple(a), bound, p, entries, stabilized, seed, budget)


def harvest_until_stable(a, p: int, budget: Budget = Budget(), seed: int = 0, start: int = 1) -> Catalog:
    """Grow the uniform bound (k, ..., k) from k = start until the harvest stabilizes.

    Raises NotStabilized when the budget runs out first.
    """
    a = Triple.of(a)
    k = start
    while True:
        try:
            cat = harvest_indecomposables(a, (k,) * a.t, p, budget, seed)
        except BudgetExceeded as exc:
            raise NotStabilized(f"harvest for a={tuple(a)} not stable up to bound {k - 1}: {exc}") from exc
        if cat.stabilized:
            return cat
        k += 1


def count_multisets(catalog: Catalog, d) -> int:
    """Number of multisets of catalog entries whose Δ-dimension vectors sum to d."""
    d = tuple(int(v) for v in d)
    table = np.zeros(tuple(v + 1 for v in d), dtype=object)
    table[(0,) * len(d)] = 1
    cells = list(itertools.product(*(range(v + 1) for v in d)))
    for e in catalog.entries:
        v = e.delta_dim
        if any(x > y for x, y in zip(v, d)):
            continue
        # unbounded knapsack: lexicographic order visits x - v before x
        for x in cells:
            if all(xi >= vi for xi, vi in zip(x, v)):
                table[x] += table[tuple(xi - vi for xi, vi in zip(x, v))]
    return int(table[d])
