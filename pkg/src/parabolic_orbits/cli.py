"""Command-line front end: every operation as a JSON (or DOT / text) report.

Exit codes: 0 success, 1 other library error, 2 usage error, 3 budget
exhausted (including harvests that do not stabilize in budget), 4 internal
invariant violation.  Errors go to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .classifier import classify
from .combinatorics import Triple, dims_report
from .errors import BudgetExceeded, DualOracleMismatch, InvariantViolation, NotStabilized, ParabolicOrbitsError
from .fields import PrimeField
from .orbit_catalog.arquiver import ar_quiver
from .orbit_catalog.bfs import Budget, count_orbits_bruteforce
from .orbit_catalog.degeneration import degeneration_poset
from .orbit_catalog.dictionary import decode, layout, point_to_module
from .orbit_catalog.embed import embed, vertex_map, zero_delta_positions
from .orbit_catalog.harvest import harvest_indecomposables
from .orbit_catalog.isoclasses import enumerate_isoclasses
from .quadratic_form import build_form, is_positive_definite, is_positive_semidefinite, radical_basis
from .quiver_algebra import build_quiver
from .representations import Representation, delta_dimension_vector

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _triple(ns) -> Triple:
    return Triple.of(ns.a)


def _budget(ns) -> Budget:
    return Budget(states=ns.states, seconds=ns.seconds, memory_bytes=ns.memory)


def _report(ns, obj: dict) -> dict:
    obj = dict(obj)
    obj["seed"] = ns.seed
    return obj


# -- subcommands: each returns (json-able dict, dot text or None) --------------


def cmd_classify(ns):
    return classify(_triple(ns)).to_json(), None


def cmd_form(ns):
    form = build_form(_triple(ns))
    return {
        "a": list(_triple(ns)),
        "gram2": form.as_lists(),
        "psd": is_positive_semidefinite(form),
        "positive_definite": is_positive_definite(form),
        "radical": [list(v) for v in radical_basis(form)],
    }, None


def cmd_dims(ns):
    a = _triple(ns)
    return {"a": list(a), "d": list(ns.d), **dims_report(a, ns.d)._asdict()}, None


def cmd_quiver(ns):
    Q = build_quiver(_triple(ns))
    return Q.to_json(), Q.to_dot()


def cmd_orbits(ns):
    a, budget = _triple(ns), _budget(ns)
    if ns.method == "bfs":
        return _report(ns, count_orbits_bruteforce(a, ns.d, ns.p, budget).to_json()), None
    enum = enumerate_isoclasses(a, ns.d, ns.p, budget, ns.seed)
    out = enum.to_json()
    out["orbit_count"] = len(enum)
    if ns.method == "both":
        bfs = count_orbits_bruteforce(a, ns.d, ns.p, budget)
        if bfs.orbit_count != len(enum):
            raise DualOracleMismatch(f"BFS found {bfs.orbit_count} orbits, isoclass enumeration {len(enum)}")
        out["bfs_orbit_count"] = bfs.orbit_count
    return _report(ns, out), None


def cmd_indecs(ns):
    cat = harvest_indecomposables(_triple(ns), ns.bound, ns.p, _budget(ns), ns.seed)
    return cat.to_json(), None


def cmd_arquiver(ns):
    q = ar_quiver(_triple(ns), ns.bound, ns.p, _budget(ns), ns.seed)
    return q.to_json(), q.to_dot()


def cmd_degen(ns):
    P = degeneration_poset(_triple(ns), ns.d, ns.p, _budget(ns), ns.seed)
    return P.to_json(), P.to_dot()


def cmd_embed(ns):
    small, big = _triple(ns), Triple.of(ns.into)
    if ns.module:
        with open(ns.module) as fh:
            M = Representation.from_json(json.load(fh))
    else:
        if ns.d is None or ns.p is None:
            raise UsageError("embed needs --module FILE or --d LIST --p P [--code N]")
        M = point_to_module(small, ns.d, decode(layout(small, ns.d), ns.code, ns.p), PrimeField(ns.p))
    E = embed(small, big, M)
    return {
        "a_small": list(small),
        "a_big": list(big),
        "vertex_map": list(vertex_map(small, big)),
        "zero_positions": list(zero_delta_positions(small, big)),
        "delta_dim": list(delta_dimension_vector(E)),
        "module": E.to_json(),
    }, None


def cmd_selftest(ns):
    results = acceptance.run_all(heavy=ns.heavy)
    out = {"passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}
    for r in results:
        print(r.line(), file=sys.stderr)
    if not out["passed"]:
        failed = [r.number for r in results if not r.passed]
        raise InvariantViolation(f"acceptance criteria failed: {failed}")
    return out, None


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="worker count; kernels run serially, output never depends on it")
    common.add_argument("--states", type=int, default=10**6, help="state budget")
    common.add_argument("--seconds", type=float, default=None, help="time budget")
    common.add_argument("--memory", type=int, default=None, help="memory budget in bytes")
    common.add_argument("--format", choices=("json", "dot", "text"), default=None)
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    parser = _Parser(prog="parabolic-orbits", description="Parabolic orbits on nilradicals of three-block parabolics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, triple=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if triple:
            sp.add_argument("a", type=int, nargs=3, metavar="A")
        sp.set_defaults(fn=fn)
        return sp

    add("classify", cmd_classify, "finite or infinite type, with witness")
    add("form", cmd_form, "unit quadratic form and its radical")
    add("dims", cmd_dims, "dimension report").add_argument("--d", type=int_list, required=True)
    sp = add("quiver", cmd_quiver, "the quiver with relations")
    sp.add_argument("--dot", action="store_true")
    sp = add("orbits", cmd_orbits, "P-orbits on q_u over F_p")
    sp.add_argument("--d", type=int_list, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--method", choices=("bfs", "isoclasses", "both"), default="bfs")
    sp = add("indecs", cmd_indecs, "harvested indecomposables up to a bound")
    sp.add_argument("--bound", type=int_list, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp = add("arquiver", cmd_arquiver, "AR quiver of a stable harvest")
    sp.add_argument("--bound", type=int_list, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--dot", action="store_true")
    sp = add("degen", cmd_degen, "hom-order degeneration poset")
    sp.add_argument("--d", type=int_list, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--dot", action="store_true")
    sp = add("embed", cmd_embed, "embed a module over A(a) into A(b) for a <= b")
    sp.add_argument("--into", type=int, nargs=3, required=True, metavar="B")
    sp.add_argument("--module", default=None, help="Representation JSON file")
    sp.add_argument("--d", type=int_list, default=None)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--code", type=int, default=0, help="point code in q_u(a, d)")
    sp = add("selftest", cmd_selftest, "run the acceptance suite", triple=False)
    sp.add_argument("--heavy", action="store_true", help="include the infinite-growth run")
    return parser


def _render(payload: dict, dot, fmt: str) -> str:
    if fmt == "dot":
        if dot is None:
            raise UsageError("this subcommand has no DOT output")
        return dot
    if fmt == "text":
        return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in payload.items()) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _fail(code: int, exc: BaseException) -> int:
    err = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if getattr(exc, "required", None) is not None:
        err["required"] = exc.required
    print(json.dumps(err, sort_keys=True), file=sys.stderr)
    return code


def cli_dispatch(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        if ns.threads < 1:
            raise UsageError("--threads must be >= 1")
        fmt = ns.format or ("dot" if getattr(ns, "dot", False) else "json")
        payload, dot = ns.fn(ns)
        text = _render(payload, dot, fmt)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except (BudgetExceeded, NotStabilized) as exc:
        return _fail(EXIT_BUDGET, exc)
    except (InvariantViolation, AssertionError) as exc:
        return _fail(EXIT_INVARIANT, exc)
    except (ValueError, ParabolicOrbitsError) as exc:
        code = EXIT_USAGE if isinstance(exc, ValueError) else EXIT_ERROR
        return _fail(code, exc)
    if ns.output:
        with open(ns.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
