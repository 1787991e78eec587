"""Acceptance checks, shared by the test-suite and ``selftest``.

Each check returns a CheckResult; a check never raises for a mathematical
mismatch, it reports it.  Tolerances are exact throughout.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .classifier import FINITE, INFINITE, classify, dichotomy_check
from .combinatorics import Triple, dims_report
from .errors import ParabolicOrbitsError
from .fields import PrimeField
from .orbit_catalog.arquiver import ar_quiver, projective_vertices
from .orbit_catalog.bfs import Budget, count_orbits_bruteforce
from .orbit_catalog.degeneration import degeneration_poset
from .orbit_catalog.dictionary import decode, layout, point_to_module
from .orbit_catalog.embed import embed, zero_delta_positions
from .orbit_catalog.harvest import count_multisets, harvest_indecomposables, harvest_until_stable
from .orbit_catalog.isoclasses import enumerate_isoclasses
from .quadratic_form import build_form, is_positive_definite, is_positive_semidefinite, radical_basis
from .representations import delta_dimension_vector, hom_dim, is_indecomposable, is_isomorphic
from .tables import MAXIMAL_FINITE, MINIMAL_INFINITE

FINITE_TRIPLES = ((1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 2), (1, 2, 2))
STATE_BUDGET = 10**6


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = dc_field(default_factory=dict, repr=False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.1f}s) {self.detail}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, str, dict]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail, data = fn()
    except ParabolicOrbitsError as exc:
        ok, detail, data = False, f"{type(exc).__name__}: {exc}", {}
    return CheckResult(number, title, bool(ok), detail, time.perf_counter() - t0, data)


# -- 1-3: tables, forms, classifier --------------------------------------------


def check_table_dimensions() -> CheckResult:
    def run():
        bad = []
        for a, (d, expected) in MINIMAL_INFINITE.items():
            rep = dims_report(a, d)
            if rep.dimP_mod_Qu != expected or rep.dim_qu_mod_derived != expected:
                bad.append((a, rep.dimP_mod_Qu, rep.dim_qu_mod_derived, expected))
        return not bad, f"mismatches: {bad}" if bad else "all six rows exact", {"mismatches": bad}

    return _timed(1, "minimal infinite triples: dim P/Q_u = dim q_u/q_u' = tabulated value", run)


def check_quadratic_forms() -> CheckResult:
    def run():
        bad = []
        for a, (d, _) in MINIMAL_INFINITE.items():
            form = build_form(a)
            rad = radical_basis(form)
            if not is_positive_semidefinite(form) or rad != [tuple(d)]:
                bad.append((a, rad))
        definite = is_positive_definite(build_form((1, 1, 1)))
        ok = not bad and definite
        return ok, f"radical mismatches: {bad}, (1,1,1) definite: {definite}", {}

    return _timed(2, "unit forms: semidefinite with radical spanned by the tabulated vector", run)


def _table2_instances(limit: int = 12):
    for pat in MAXIMAL_FINITE:
        free = [k for k, v in enumerate(pat) if v is None]
        for vals in itertools.product(range(1, limit + 1), repeat=len(free)):
            a = list(pat)
            for k, v in zip(free, vals):
                a[k] = v
            yield pat, tuple(a)


def check_classifier() -> CheckResult:
    def run():
        problems = []
        rep = dichotomy_check(12)
        if rep.checked != 1728:
            problems.append(f"checked {rep.checked} triples")
        for m in MINIMAL_INFINITE:
            for a in (m, m[::-1]):
                v = classify(a)
                if v.kind != INFINITE or tuple(v.witness) != a:
                    problems.append(f"{a}: {v.to_json()}")
        for pat, a in _table2_instances():
            for b in (a, a[::-1]):
                if classify(b).kind != FINITE:
                    problems.append(f"{b} from {pat} not finite")
        for a in itertools.product(range(1, 13), repeat=3):
            if classify(a).kind != classify(a[::-1]).kind:
                problems.append(f"reversal breaks at {a}")
        decrements, two_block = 0, 0
        for m in MINIMAL_INFINITE:
            for k in range(3):
                a = list(m)
                a[k] -= 1
                decrements += 1
                if a[k] == 0:
                    # two blocks left: q_u is one Hom space, orbits are ranks 0..min
                    two_block += 1
                    continue
                if classify(a).kind != FINITE:
                    problems.append(f"decrement {tuple(a)} of {m} not finite")
        if decrements != 18:
            problems.append(f"{decrements} decrements, expected 18")
        detail = "; ".join(problems[:5]) if problems else (
            f"1728 triples, 0 violations, tables agree; {decrements - two_block} decrements classify finite, "
            f"{two_block} reach a zero entry (two-block, finite by rank)"
        )
        return not problems, detail, {}

    return _timed(3, "classifier dichotomy, table membership, reversal, decrements", run)


# -- 4-7: orbits ---------------------------------------------------------------


def check_small_orbits() -> CheckResult:
    def run():
        r2 = count_orbits_bruteforce((1, 1, 1), (1, 1, 1), 2)
        counts = {p: count_orbits_bruteforce((1, 1, 1), (1, 1, 1), p).orbit_count for p in (3, 5)}
        ok = (
            r2.orbit_count == 5
            and r2.size_multiset() == [1, 1, 2, 2, 2]
            and sum(r2.sizes) == 8
            and counts[3] == 5
            and counts[5] == 5
        )
        return ok, f"p=2: {r2.orbit_count} orbits, sizes {r2.size_multiset()}; p=3: {counts[3]}; p=5: {counts[5]}", {}

    return _timed(4, "B acting on strictly upper 3x3 matrices", run)


def finite_instances(p: int, budget: int = STATE_BUDGET):
    """(a, d) with a a finite triple, d in {1, 2}^t, and p^dim q_u <= budget."""
    for a in FINITE_TRIPLES:
        for d in itertools.product((1, 2), repeat=sum(a)):
            if layout(a, d).state_count(p) <= budget:
                yield a, d


def check_dual_oracles(p: int = 2, seed: int = 0) -> CheckResult:
    def run():
        budget = Budget(states=STATE_BUDGET)
        rows, bad = [], []
        for a, d in finite_instances(p):
            bfs = count_orbits_bruteforce(a, d, p, budget).orbit_count
            iso = len(enumerate_isoclasses(a, d, p, budget, seed))
            multi = count_multisets(harvest_indecomposables(a, d, p, budget, seed), d)
            rows.append((a, d, bfs, iso, multi))
            if not bfs == iso == multi:
                bad.append((a, d, bfs, iso, multi))
        detail = f"{len(rows)} instances at p={p}, {len(bad)} mismatches" + (f": {bad[:3]}" if bad else "")
        return not bad and len(rows) > 0, detail, {"rows": rows}

    return _timed(5, "BFS orbits = isoclasses = multisets of harvested indecomposables", run)


def check_stability_and_reversal(primes=(2, 3, 5)) -> CheckResult:
    def run():
        budget = Budget(states=STATE_BUDGET)
        bad, compared = [], 0
        base = {(a, d): count_orbits_bruteforce(a, d, 2, budget).orbit_count for a, d in finite_instances(2)}
        for p in primes[1:]:
            for a, d in finite_instances(p):
                compared += 1
                c = count_orbits_bruteforce(a, d, p, budget).orbit_count
                if c != base[(a, d)]:
                    bad.append(("prime", p, a, d, c, base[(a, d)]))
        for (a, d), c in base.items():
            compared += 1
            r = count_orbits_bruteforce(a[::-1], d[::-1], 2, budget).orbit_count
            if r != c:
                bad.append(("reverse", a, d, r, c))
        detail = f"{compared} comparisons across p in {primes} and reversal, {len(bad)} mismatches" + (f": {bad[:3]}" if bad else "")
        return not bad, detail, {}

    return _timed(6, "finite-type counts independent of p and of reversal", run)


def check_infinite_growth(budget_states: int = 5 * 10**7) -> CheckResult:
    def run():
        budget = Budget(states=budget_states, memory_bytes=2 * 10**9)
        a, d = (2, 3, 2), (1,) * 7
        c2 = count_orbits_bruteforce(a, d, 2, budget).orbit_count
        c3 = count_orbits_bruteforce(a, d, 3, budget).orbit_count
        return c3 > c2, f"p=2: {c2} orbits, p=3: {c3} orbits", {"p2": c2, "p3": c3}

    return _timed(7, "(2,3,2), d = 1^7: more orbits at p = 3 than at p = 2", run)


# -- 8-10: catalog structure ---------------------------------------------------


def check_ar_structure(p: int = 2) -> CheckResult:
    def run():
        stable = harvest_until_stable((1, 1, 1), p)
        small = harvest_indecomposables((1, 1, 1), (1, 1, 1), p)
        expected = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)}
        got = small.delta_dims()
        q = ar_quiver((1, 1, 1), stable.bound, p)
        proj = projective_vertices(q)
        ok = (
            stable.stabilized
            and len(got) == 7
            and set(got) == expected
            and len(q.translate) > 0
            and q.mesh_additive()
            and sorted(q.projective_nodes()) == sorted(proj)
        )
        detail = (
            f"stable at bound {stable.bound} with {len(stable)} indecomposables; bound (1,1,1): {len(got)}; "
            f"{len(q.translate)} meshes, additive: {q.mesh_additive()}; nodes without τ = projectives: "
            f"{sorted(q.projective_nodes()) == sorted(proj)}"
        )
        return ok, detail, {}

    return _timed(8, "harvest stabilizes for (1,1,1); 7 indecomposables; mesh additivity", run)


def check_degeneration_poset() -> CheckResult:
    def run():
        problems = []
        posets = {p: degeneration_poset((1, 1, 1), (1, 1, 1), p) for p in (2, 3)}
        for p, P in posets.items():
            labels = [P.label(k) for k in range(len(P))]
            if len(P) != 5 or not P.is_antisymmetric():
                problems.append(f"p={p}: {len(P)} elements, antisymmetric {P.is_antisymmetric()}")
                continue
            top, bottom = P.maxima(), P.minima()
            if [labels[k] for k in top] != ["001+010+100"] or [labels[k] for k in bottom] != ["111"]:
                problems.append(f"p={p}: top {top}, bottom {bottom}")
            mid = labels.index("010+101")
            for other in ("001+110", "011+100"):
                o = labels.index(other)
                if not (P.leq[o, mid] and P.leq[mid, top[0]] and mid not in (o, top[0])):
                    problems.append(f"p={p}: 010+101 not between {other} and the top")
            sizes = P.orbit_sizes()
            for i, j in zip(*np.nonzero(P.leq & ~np.eye(len(P), dtype=bool))):
                # i below j: j is more degenerate, its orbit is smaller
                if (p == 2 and sizes[i] < sizes[j]) or (p == 3 and sizes[i] <= sizes[j]):
                    problems.append(f"p={p}: sizes {sizes[i]} vs {sizes[j]} for {labels[i]} below {labels[j]}")
        detail = "; ".join(problems) if problems else "5 elements, top ⊕Δ, bottom 111, orbit sizes monotone (strict at p=3)"
        return not problems, detail, {}

    return _timed(9, "hom-order poset for (1,1,1), d = (1,1,1)", run)


def random_module(a, d, field, rng):
    """The module of a random point, moved out of normal form by a random base change."""
    lay = layout(a, d)
    p = field.p
    code = int(rng.integers(0, lay.state_count(p)))
    M = point_to_module(a, d, decode(lay, code, p), field)
    g = []
    for n in M.dims:
        while True:
            x = field.random(rng, (n, n))
            if field.is_invertible(x):
                break
        g.append(x)
    return M.change_basis(g)


def check_embedding(corpus_size: int = 60, p: int = 3, seed: int = 0) -> CheckResult:
    def run():
        F = PrimeField(p)
        rng = np.random.default_rng(seed)
        small, big = (1, 1, 1), (2, 1, 1)
        corpus = [random_module(small, tuple(int(v) for v in rng.integers(1, 3, 3)), F, rng) for _ in range(corpus_size)]
        corpus += [e.module for e in harvest_indecomposables(small, (1, 1, 1), p)]
        images = [embed(small, big, M) for M in corpus]
        zeros = set(zero_delta_positions(small, big))
        problems = []
        for M, E in zip(corpus, images):
            dd = delta_dimension_vector(E)
            got = {i + 1 for i, v in enumerate(dd) if v == 0}
            # predicted zeros always appear; M's own zeros add more
            if not zeros <= got or (min(delta_dimension_vector(M)) > 0 and got != zeros):
                problems.append(f"DeltaDim {dd}")
            if is_indecomposable(M) != is_indecomposable(E):
                problems.append("indecomposability changed")
        pairs = 0
        for i, j in itertools.combinations(range(len(corpus)), 2):
            M, N = corpus[i], corpus[j]
            if hom_dim(M, N) != hom_dim(images[i], images[j]) or hom_dim(N, M) != hom_dim(images[j], images[i]):
                problems.append(f"hom dims differ for pair {i},{j}")
            if M.dims == N.dims:
                pairs += 1
                if bool(is_isomorphic(M, N)) != bool(is_isomorphic(images[i], images[j])):
                    problems.append(f"isomorphism changed for pair {i},{j}")
        detail = (
            f"{len(corpus)} modules, {len(corpus) * (len(corpus) - 1)} hom comparisons, {pairs} iso comparisons; "
            + ("; ".join(problems[:3]) if problems else "all preserved")
        )
        return not problems, detail, {}

    return _timed(10, "embedding (1,1,1) -> (2,1,1) preserves homs, indecomposables, isoclasses", run)


CHECKS = {
    1: check_table_dimensions,
    2: check_quadratic_forms,
    3: check_classifier,
    4: check_small_orbits,
    5: check_dual_oracles,
    6: check_stability_and_reversal,
    7: check_infinite_growth,
    8: check_ar_structure,
    9: check_degeneration_poset,
    10: check_embedding,
}
HEAVY = {7}


def run_all(heavy: bool = False, only=None) -> list[CheckResult]:
    numbers = sorted(only) if only else sorted(CHECKS)
    return [CHECKS[k]() for k in numbers if heavy or k not in HEAVY]
