"""Finite versus infinite orbit type for a triple, with a checkable witness."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .combinatorics import Triple
from .errors import DichotomyViolation, WitnessNotFound
from .tables import MAXIMAL_FINITE, MINIMAL_INFINITE

FINITE = "finite"
INFINITE = "infinite"

# Most general patterns first, so (1,1,1) is witnessed by (*,1,*).
_PATTERNS = sorted(MAXIMAL_FINITE, key=lambda pat: -sum(v is None for v in pat))
_MINIMALS = tuple(MINIMAL_INFINITE)


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: tuple  # oriented so that the entrywise comparison with a holds directly
    reverse_used: bool

    @property
    def finite(self) -> bool:
        return self.kind == FINITE

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness": ["*" if v is None else v for v in self.witness],
            "reverse_used": self.reverse_used,
        }


def _below(a, pattern) -> bool:
    return all(p is None or x <= p for x, p in zip(a, pattern))


def _above(a, m) -> bool:
    return all(x >= y for x, y in zip(a, m))


def finite_witness(a) -> Optional[tuple[tuple, bool]]:
    a = tuple(Triple.of(a))
    for pat in _PATTERNS:
        if _below(a, pat):
            return pat, False
        rev = pat[::-1]
        if _below(a, rev):
            return rev, True
    return None


def infinite_witness(a) -> Optional[tuple[tuple, bool]]:
    a = tuple(Triple.of(a))
    for m in _MINIMALS:
        if _above(a, m):
            return m, False
        if _above(a, m[::-1]):
            return m[::-1], True
    return None


def classify(a) -> Verdict:
    fin = finite_witness(a)
    if fin is not None:
        return Verdict(FINITE, *fin)
    inf = infinite_witness(a)
    if inf is None:
        raise WitnessNotFound(f"{tuple(Triple.of(a))} is neither below a maximal finite nor above a minimal infinite triple")
    return Verdict(INFINITE, *inf)


@dataclass(frozen=True)
class DichotomyReport:
    bound: int
    checked: int
    finite: int
    infinite: int
    violations: tuple = ()

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "checked": self.checked,
            "finite": self.finite,
            "infinite": self.infinite,
            "violations": [list(v) for v in self.violations],
        }


def dichotomy_check(bound: int) -> DichotomyReport:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    bad = []
    n_fin = n_inf = 0
    for a in product(range(1, bound + 1), repeat=3):
        f = finite_witness(a) is not None
        i = infinite_witness(a) is not None
        if f == i:
            bad.append(a)
        n_fin += f
        n_inf += i
    if bad:
        raise DichotomyViolation(f"{len(bad)} triples violate the dichotomy", bad)
    return DichotomyReport(bound, bound**3, n_fin, n_inf)


def _check_tables():
    # No maximal finite pattern may dominate a minimal infinite triple.
    for m in _MINIMALS:
        for pat in MAXIMAL_FINITE:
            if _below(m, pat) or _below(m[::-1], pat):
                raise AssertionError(f"pattern {pat} dominates minimal infinite triple {m}")


_check_tables()
