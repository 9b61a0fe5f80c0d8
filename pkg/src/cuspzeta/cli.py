"""Command-line interface: family builders, zeta reports, verification.

Commands
--------
family   emit a builtin family as graph JSON
zeta     zeta functions (and optional counting series) of a graph file
count    counting series, optionally cross-checked against the trace oracle
poles    pole report of the weighted-graph zeta function
sweep    CSV pole sweep of the loop family over a range of N
verify   engine-versus-oracle consistency checks with pass/fail lines

Graphs are passed as file paths or "-" for standard input.  Exit codes:
0 success, 1 verification or computation failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from cuspzeta.exact import Poly, ratfunc_reduce, series_expand
from cuspzeta.families import chain, loop_family, pgl2, star
from cuspzeta.graphs import CuspidalGraph, GraphFormatError, relabel, truncate, validate
from cuspzeta.oracle import (
    BudgetExceededError,
    enumerate_primitive_cycles,
    euler_product_series,
    trace_powers,
)
from cuspzeta.spectra import RootFindingError, pole_gap_sweep, pole_report
from cuspzeta.zeta import bass_ihara_zeta, counting_series

USAGE_ERROR = 2
FAILURE = 1


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _load_graph(path: str) -> CuspidalGraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    graph = CuspidalGraph.from_json(data)
    report = validate(graph)
    if not report.ok:
        raise GraphFormatError("; ".join(report.errors))
    return graph


def _parse_parts(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"parts must be comma-separated integers: {text!r}")
    return parts


def _parse_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return range(int(lo), int(hi) + 1)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad range: {text!r}")
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range: {text!r}")
    return range(n, n + 1)


def _positive_tol(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def cmd_family(args: argparse.Namespace) -> int:
    try:
        if args.name == "pgl2":
            graph = pgl2(args.q)
        elif args.name == "chain":
            if args.k is None:
                return _fail_usage("family chain requires --k")
            graph = chain(args.q, args.k)
        elif args.name == "star":
            if args.parts is None:
                return _fail_usage("family star requires --parts")
            graph = star(args.q, args.parts)
        else:
            if args.n is None:
                return _fail_usage("family loops requires --N")
            graph = loop_family(args.q, args.n)
    except ValueError as exc:
        return _fail_usage(str(exc))
    print(graph.to_json_str())
    return 0


def cmd_zeta(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    result = bass_ihara_zeta(graph)
    payload = result.to_json()
    if args.expand_selberg:
        payload["selberg"] = result.selberg_expanded().to_json()
    if args.series is not None:
        if args.series < 1:
            return _fail_usage("--series must be >= 1")
        payload["series"] = counting_series(graph, args.series).to_json()
    print(json.dumps(payload, indent=2))
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    if args.m < 1:
        return _fail_usage("--m must be >= 1")
    series = counting_series(graph, args.m)
    payload = series.to_json()
    if args.oracle:
        traces = (
            trace_powers(truncate(graph, args.m // 2 + 1), args.m)
            if graph.cusps
            else trace_powers(graph.core, args.m)
        )
        payload["oracle_N"] = [int(t) if t.denominator == 1 else str(t) for t in traces]
        payload["match"] = list(series.n_values) == traces
        print(json.dumps(payload, indent=2))
        return 0 if payload["match"] else FAILURE
    print(json.dumps(payload, indent=2))
    return 0


def cmd_poles(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    z = bass_ihara_zeta(graph).bass_ihara
    report = pole_report(z, args.tol)
    print(json.dumps(report.to_json(), indent=2))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.family != "loops":
        return _fail_usage(f"unknown sweep family {args.family!r}")
    rows = pole_gap_sweep(args.q, list(args.n_range))
    print("N,R,second_modulus,ramanujan")
    for row in rows:
        second = "" if row.second_modulus is None else f"{row.second_modulus:.15g}"
        print(f"{row.n},{row.radius:.15g},{second},{str(row.is_ramanujan).lower()}")
    return 0


def _check(name: str, ok: bool, lhs, rhs) -> dict:
    return {"name": name, "pass": bool(ok), "lhs": lhs, "rhs": rhs}


def _verify_checks(graph: CuspidalGraph, max_m: int) -> list[dict]:
    checks = []
    series = counting_series(graph, max_m)
    traces = (
        trace_powers(truncate(graph, max_m // 2 + 1), max_m)
        if graph.cusps
        else trace_powers(graph.core, max_m)
    )
    engine = [str(x) for x in series.n_values]
    oracle = [str(t) for t in traces]
    mismatch = next((m for m in range(max_m) if series.n_values[m] != traces[m]), None)
    entry = _check("counting_vs_trace", mismatch is None, engine, oracle)
    if mismatch is not None:
        entry["first_failing_m"] = mismatch + 1
    checks.append(entry)

    euler_order = min(max_m, 10)
    z = bass_ihara_zeta(graph).bass_ihara
    finite = truncate(graph, euler_order // 2 + 1) if graph.cusps else graph.core
    classes = enumerate_primitive_cycles(finite, euler_order)
    product = euler_product_series(classes, euler_order, enumerated_to=euler_order)
    expansion = series_expand(z, euler_order)
    checks.append(
        _check(
            "euler_product_vs_series",
            product == expansion,
            [str(c) for c in product.coeffs],
            [str(c) for c in expansion.coeffs],
        )
    )

    rng = random.Random(20260808)
    base = bass_ihara_zeta(graph).bass_ihara
    ok = True
    for _ in range(5):
        names = list(graph.core.vertices)
        shuffled = names[:]
        rng.shuffle(shuffled)
        permuted = relabel(graph, dict(zip(names, shuffled)))
        if bass_ihara_zeta(permuted).bass_ihara != base:
            ok = False
            break
    checks.append(_check("relabeling_invariance", ok, str(base), "5 random relabelings"))
    return checks


def _fixture_checks() -> list[dict]:
    def rf(num, den):
        return ratfunc_reduce(Poly(num), Poly(den))

    golden = [
        ("pgl2(2)", pgl2(2), rf([1, 0, -2], [1, 0, -4])),
        ("chain(3,4)", chain(3, 4), rf([1, 0, -3], [1, 0, -9])),
        (
            "star(3,(2,2))",
            star(3, (2, 2)),
            rf(
                (Poly([1, 0, -3]) ** 2).coeffs,
                (Poly([1, -1]) * Poly([1, 1]) * Poly([1, 0, -9])).coeffs,
            ),
        ),
        (
            "star(3,(1,1,1))",
            star(3, (1, 1, 1)),
            rf(
                (Poly([1, 0, -3]) ** 3).coeffs,
                ((Poly([1, -1]) * Poly([1, 1])) ** 2 * Poly([1, 0, -7])).coeffs,
            ),
        ),
    ]
    checks = []
    for name, graph, expected in golden:
        got = bass_ihara_zeta(graph).bass_ihara
        checks.append(_check(f"fixture:{name}", got == expected, repr(got), repr(expected)))
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    if not 1 <= args.max_m <= 14:
        return _fail_usage("--max-m must be between 1 and 14")
    started = time.monotonic()
    result = bass_ihara_zeta(graph)
    checks = _verify_checks(graph, args.max_m)
    if args.fixtures:
        checks.extend(_fixture_checks())
    elapsed = time.monotonic() - started
    ok = all(c["pass"] for c in checks)
    report = {
        "input": {
            "vertices": len(graph.core.vertices),
            "cusps": len(graph.cusps),
            "q": graph.q,
            "central_order": graph.central_order,
        },
        "zeta": result.to_json(),
        "counting": counting_series(graph, args.max_m).to_json(),
        "poles": pole_report(result.bass_ihara).to_json(),
        "checks": checks,
        "elapsed_s": round(elapsed, 6),
        "ok": ok,
    }
    print(json.dumps(report, indent=2))
    for c in checks:
        status = "PASS" if c["pass"] else "FAIL"
        print(f"{status} {c['name']}", file=sys.stderr)
    return 0 if ok else FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspzeta",
        description="Exact zeta functions of weighted and cuspidal graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_family = sub.add_parser("family", help="emit a builtin family as graph JSON")
    p_family.add_argument("name", choices=["pgl2", "chain", "star", "loops"])
    p_family.add_argument("--q", type=int, required=True)
    p_family.add_argument("--k", type=int, default=None)
    p_family.add_argument("--parts", type=_parse_parts, default=None)
    p_family.add_argument("--N", dest="n", type=int, default=None)
    p_family.set_defaults(func=cmd_family)

    p_zeta = sub.add_parser("zeta", help="zeta functions of a graph file")
    p_zeta.add_argument("graph")
    p_zeta.add_argument("--series", type=int, default=None, metavar="M")
    p_zeta.add_argument("--expand-selberg", action="store_true")
    p_zeta.set_defaults(func=cmd_zeta)

    p_count = sub.add_parser("count", help="counting series N_m and R_m")
    p_count.add_argument("graph")
    p_count.add_argument("--m", type=int, required=True)
    p_count.add_argument("--oracle", action="store_true")
    p_count.set_defaults(func=cmd_count)

    p_poles = sub.add_parser("poles", help="pole report of the zeta function")
    p_poles.add_argument("graph")
    p_poles.add_argument("--tol", type=_positive_tol, default=1e-9)
    p_poles.set_defaults(func=cmd_poles)

    p_sweep = sub.add_parser("sweep", help="CSV pole sweep over a family range")
    p_sweep.add_argument("family", choices=["loops"])
    p_sweep.add_argument("--q", type=int, required=True)
    p_sweep.add_argument("--N", dest="n_range", type=_parse_range, required=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="engine-versus-oracle verification")
    p_verify.add_argument("graph")
    p_verify.add_argument("--max-m", type=int, default=10)
    p_verify.add_argument("--fixtures", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, FileNotFoundError) as exc:
        return _fail_usage(str(exc))
    except BudgetExceededError as exc:
        print(f"FAIL budget: {exc}", file=sys.stderr)
        return FAILURE
    except (RootFindingError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
