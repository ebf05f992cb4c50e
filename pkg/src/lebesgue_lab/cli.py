"""Command line driver for desk-scale interpolation experiments.

Five subcommands tie the library together: ``growth`` tabulates
Lebesgue constants against degree, ``converge`` tabulates uniform
interpolation errors with the near-best bound, ``faber-check`` verdicts
a candidate interpolating basis, ``porosity`` reports one-sided lower
porosities on a compact set, and ``oracle`` cross-validates the
Lebesgue function against its sign-enumeration oracle.

Exit codes: 0 for success including negative verdicts, 2 for input
errors, 3 for internal numerical failures. Identical configuration and
seed always produce byte-identical output files.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

import numpy as np

from . import functions, report
from .compactset import CompactSet, isolation_criterion, load_set, lower_porosity
from .errors import DomainError, InputError, NumericalError
from .faber import (
    BasisCandidate,
    RecoveryResult,
    check_interpolating,
    load_polynomials,
    newton_candidate,
    partial_sums_equal,
    projection_chain_check,
    recover_nodes,
)
from .lebesgue import (
    best_approx_upper_bound,
    growth_report,
    lebesgue_constant,
    lebesgue_function,
    lebesgue_sup_oracle,
    operator_norm_probe,
    uniform_error,
)
from .matrices import (
    InterpolationMatrix,
    NodeSequence,
    chebyshev_matrix,
    chebyshev_row,
    equispaced_matrix,
    load_matrix,
    load_node_sequence,
    nested_matrix,
)

__all__ = ["build_parser", "main", "run"]

GENERATOR = "numpy-pcg64"
ORACLE_TRIALS = 100
ORACLE_POINTS_PER_TRIAL = 10
ORACLE_DEGREE_CAP = 8
ORACLE_MIN_SEPARATION = 1e-3
PROBE_ROW_SIZE = 5
FABER_TEST_FUNCTIONS = ("abs", "runge", "exp")


def _resolve_matrix(spec: str, depth: int) -> tuple[InterpolationMatrix, str]:
    if spec == "chebyshev":
        return chebyshev_matrix(depth), "chebyshev"
    if spec == "equispaced":
        return equispaced_matrix(depth), "equispaced"
    if spec.startswith("nested:"):
        path = spec[len("nested:") :]
        seq = load_node_sequence(path)
        if len(seq) < depth:
            raise InputError(
                f"node sequence {path} has {len(seq)} points, need {depth}"
            )
        return nested_matrix(seq, depth), spec
    matrix = load_matrix(spec)
    if matrix.depth < depth:
        raise InputError(f"matrix file {spec} has depth {matrix.depth}, need {depth}")
    return matrix, spec


def _resolve_set(args, matrix: InterpolationMatrix | None) -> tuple[CompactSet, str]:
    if args.set is not None and args.interval is not None:
        raise InputError("give --set or --interval, not both")
    if args.set is not None:
        return load_set(args.set), args.set
    if args.interval is not None:
        a, b = args.interval
        if b < a:
            raise InputError(f"interval endpoints out of order: {a:g} > {b:g}")
        return CompactSet.from_interval(a, b), f"[{a:g}, {b:g}]"
    if matrix is None:
        return CompactSet.from_interval(-1.0, 1.0), "[-1, 1]"
    a, b = matrix.ambient
    return CompactSet.from_interval(a, b), f"[{a:g}, {b:g}]"


def _parsed_functions(specs) -> list:
    fs = [functions.parse_spec(s) for s in specs]
    names = [f.name for f in fs]
    if len(set(names)) != len(names):
        raise InputError("function list contains duplicates")
    return fs


def _figure_path(out: str | None) -> str:
    if out in (None, "-"):
        raise InputError("--plot needs --out with an actual file path")
    return str(pathlib.PurePath(out).with_suffix(".png"))


def _cmd_growth(args) -> int:
    fs = _parsed_functions(args.functions)
    if len(fs) != 1:
        raise InputError(
            "growth takes exactly one function (its uniform_error column); "
            "use converge for several"
        )
    matrix, mlabel = _resolve_matrix(args.matrix, args.nmax + 1)
    X, xlabel = _resolve_set(args, matrix)
    rows = growth_report(matrix, X, args.nmax, fs[0])
    header = ["n", "lambda_max", "argmax_x", "uniform_error", "ratio_log"]
    data = [[r.n, r.lambda_max, r.argmax_x, r.uniform_error, r.ratio_log] for r in rows]
    if args.format == "csv":
        report.write_csv(args.out, header, data)
    else:
        report.write_json(
            args.out,
            {
                "command": "growth",
                "matrix": mlabel,
                "set": xlabel,
                "n_max": args.nmax,
                "function": fs[0].name,
                "rows": [dict(zip(header, row)) for row in data],
            },
        )
    if args.plot:
        from . import plots

        plots.growth_figure(rows, _figure_path(args.out), mlabel)
    return 0


def _cmd_converge(args) -> int:
    fs = _parsed_functions(args.functions)
    by_name = {f.name: f for f in fs}
    matrix, mlabel = _resolve_matrix(args.matrix, args.nmax + 1)
    X, xlabel = _resolve_set(args, matrix)
    header = ["n", "function", "uniform_error", "lambda_max", "best_approx_bound", "slack"]
    data = []
    series: dict[str, list[tuple[int, float]]] = {name: [] for name in by_name}
    for n in range(1, args.nmax + 1):
        lam, _ = lebesgue_constant(matrix.row(n + 1), X)
        for name in sorted(by_name):
            f = by_name[name]
            err = uniform_error(f, matrix, n, X)
            bound = best_approx_upper_bound(f, n, X)
            slack = (1.0 + lam) * bound - err
            data.append([n, name, err, lam, bound, slack])
            series[name].append((n, err))
    if args.format == "csv":
        report.write_csv(args.out, header, data)
    else:
        report.write_json(
            args.out,
            {
                "command": "converge",
                "matrix": mlabel,
                "set": xlabel,
                "n_max": args.nmax,
                "functions": sorted(by_name),
                "rows": [dict(zip(header, row)) for row in data],
            },
        )
    if args.plot:
        from . import plots

        plots.converge_figure(series, _figure_path(args.out), mlabel)
    return 0


def _canonical_points(X: CompactSet) -> list[float]:
    pts = []
    for a, b in X.intervals:
        pts.append(a)
        if b != a:
            pts.append(b)
    return pts


def _cmd_porosity(args) -> int:
    X, xlabel = _resolve_set(args, None)
    points = list(args.points) if args.points is not None else _canonical_points(X)
    set_min, set_max, measure = X.min, X.max, X.measure
    header = [
        "x0",
        "p_plus",
        "p_minus",
        "p",
        "p_star",
        "right_isolated",
        "left_isolated",
        "p_star_exceeds_half",
        "converged",
        "set_min",
        "set_max",
        "measure",
        "error",
    ]
    data = []
    entries = []
    plot_rows = []
    for x0 in points:
        if not X.contains(x0):
            data.append([x0] + [None] * 8 + [set_min, set_max, measure, "not a point of the set"])
            entries.append({"x0": x0, "error": "not a point of the set"})
            continue
        est = lower_porosity(X, x0)
        flags = isolation_criterion(X, x0)
        data.append(
            [
                x0,
                est.p_plus,
                est.p_minus,
                est.p,
                est.p_star,
                flags.right_isolated,
                flags.left_isolated,
                flags.p_star_exceeds_half,
                est.converged,
                set_min,
                set_max,
                measure,
                None,
            ]
        )
        entries.append(
            {
                "x0": x0,
                "p_plus": est.p_plus,
                "p_minus": est.p_minus,
                "p": est.p,
                "p_star": est.p_star,
                "right_isolated": flags.right_isolated,
                "left_isolated": flags.left_isolated,
                "p_star_exceeds_half": flags.p_star_exceeds_half,
                "converged": est.converged,
            }
        )
        plot_rows.append((x0, est.p_plus, est.p_minus))
    if args.format == "csv":
        report.write_csv(args.out, header, data)
    else:
        report.write_json(
            args.out,
            {
                "command": "porosity",
                "set": xlabel,
                "extent": {"min": set_min, "max": set_max, "measure": measure},
                "points": entries,
            },
        )
    if args.plot:
        if not plot_rows:
            raise InputError("--plot needs at least one point inside the set")
        from . import plots

        plots.porosity_figure(plot_rows, _figure_path(args.out), xlabel)
    return 0


def _draw_nodes(rng: np.random.Generator, count: int) -> np.ndarray:
    while True:
        pts = np.sort(rng.uniform(-1.0, 1.0, count))
        if np.diff(pts).min() > ORACLE_MIN_SEPARATION:
            return pts


def _cmd_oracle(args) -> int:
    rng = np.random.default_rng(args.seed)
    cap = min(args.nmax, ORACLE_DEGREE_CAP)
    if cap < 1:
        raise InputError("oracle needs --nmax at least 1")
    X = CompactSet.from_interval(-1.0, 1.0)
    header = [
        "kind",
        "trial",
        "n",
        "x",
        "lebesgue_function",
        "sign_oracle",
        "abs_gap",
        "generator",
        "seed",
    ]
    data = []
    for trial in range(1, ORACLE_TRIALS + 1):
        n = int(rng.integers(1, cap + 1))
        row = _draw_nodes(rng, n + 1)
        xs = rng.uniform(-1.0, 1.0, ORACLE_POINTS_PER_TRIAL)
        worst = None
        for x in xs:
            x = float(x)
            lam = lebesgue_function(row, x)
            orc = lebesgue_sup_oracle(row, x)
            gap = abs(lam - orc)
            if worst is None or gap > worst[3]:
                worst = (x, lam, orc, gap)
        data.append(["sample", trial, n, *worst, GENERATOR, args.seed])
    probe_row = chebyshev_row(PROBE_ROW_SIZE)
    lam, arg = lebesgue_constant(probe_row, X)
    probe = operator_norm_probe(probe_row, X, trials=2**PROBE_ROW_SIZE)
    data.append(
        ["probe", 0, PROBE_ROW_SIZE - 1, arg, lam, probe, abs(lam - probe), GENERATOR, args.seed]
    )
    if args.format == "csv":
        report.write_csv(args.out, header, data)
    else:
        report.write_json(
            args.out,
            {
                "command": "oracle",
                "generator": GENERATOR,
                "seed": args.seed,
                "rows": [dict(zip(header, row)) for row in data],
            },
        )
    return 0


def _verdict_payload(check, recovery, equal, chain) -> dict:
    payload = {
        "zero_pattern": None
        if check is None
        else {"passed": check.passed, "k": check.k, "j": check.j, "value": check.value},
        "recovery": None
        if recovery is None
        else {
            "ok": recovery.ok,
            "nodes": None if recovery.nodes is None else list(recovery.nodes),
            "reason": recovery.reason,
        },
        "newton_equivalence": None
        if equal is None
        else {
            "equal": equal.equal,
            "lambdas": None if equal.lambdas is None else list(equal.lambdas),
            "witness": equal.witness,
        },
        "projection_chain": None
        if chain is None
        else {
            "chain_ok": chain.chain_ok,
            "commutation_ok": chain.commutation_ok,
            "degree_ok": chain.degree_ok,
            "chain_witness": None if chain.chain_witness is None else list(chain.chain_witness),
            "commutation_witness": None
            if chain.commutation_witness is None
            else list(chain.commutation_witness),
            "degree_witness": None if chain.degree_witness is None else list(chain.degree_witness),
        },
    }
    return payload


def _cmd_faber_check(args) -> int:
    if args.basis is None:
        raise InputError("faber-check requires --basis FILE")
    polys = load_polynomials(args.basis)
    try:
        basis = BasisCandidate(polys)
    except InputError as exc:
        report.write_json(
            args.out,
            {
                "command": "faber-check",
                "basis_file": str(args.basis),
                "candidate": False,
                "verdict": "not a Faber basis candidate",
                "reason": str(exc),
                "all_pass": False,
            },
        )
        return 0
    fs = [functions.closed_form(name) for name in FABER_TEST_FUNCTIONS]
    if len(basis) >= 2:
        recovery = recover_nodes(basis)
    else:
        recovery = RecoveryResult(
            False, reason="need at least two polynomials to determine nodes"
        )
    if args.nodes is not None:
        nodes = tuple(load_node_sequence(args.nodes))
        if len(nodes) < len(basis):
            raise InputError(
                f"nodes file has {len(nodes)} points but the basis has "
                f"{len(basis)} polynomials"
            )
        members = len(basis)
        nodes_source = "file"
        head = basis
    else:
        if not recovery.ok:
            payload = {
                "command": "faber-check",
                "basis_file": str(args.basis),
                "candidate": True,
                "members": len(basis),
                "nodes_source": "recovered",
                "verdict": "node recovery failed",
                "all_pass": False,
            }
            payload.update(_verdict_payload(None, recovery, None, None))
            report.write_json(args.out, payload)
            return 0
        nodes = recovery.nodes
        members = len(nodes)
        nodes_source = "recovered"
        head = BasisCandidate(basis.polys[:members])
    used = nodes[:members]
    check = check_interpolating(head, used)
    equal = partial_sums_equal(head, newton_candidate(used, members), used, fs)
    chain = None
    if members >= 2:
        chain = projection_chain_check(
            nested_matrix(NodeSequence(used), members), fs, members - 1
        )
    recovery_matches = None
    if args.nodes is not None and recovery.ok:
        m = len(recovery.nodes)
        recovery_matches = bool(
            max(abs(a - b) for a, b in zip(recovery.nodes, nodes[:m])) <= 1e-8
        )
    recovery_ok = recovery.ok or len(basis) < 2
    all_pass = bool(
        check.passed
        and equal.equal
        and recovery_ok
        and (chain is None or chain.all_ok)
        and (recovery_matches is not False)
    )
    payload = {
        "command": "faber-check",
        "basis_file": str(args.basis),
        "candidate": True,
        "members": len(basis),
        "members_checked": members,
        "nodes_source": nodes_source,
        "nodes": list(used),
        "recovery_matches_nodes": recovery_matches,
        "all_pass": all_pass,
    }
    payload.update(_verdict_payload(check, recovery, equal, chain))
    report.write_json(args.out, payload)
    return 0


def _add_common(p: argparse.ArgumentParser, fmt_default: str, fmt_choices) -> None:
    p.add_argument(
        "--format",
        choices=fmt_choices,
        default=fmt_default,
        help=f"output format (default {fmt_default})",
    )
    p.add_argument(
        "--out",
        default=None,
        metavar="PATH",
        help="output file; omitted or '-' writes to stdout",
    )
    p.add_argument(
        "--seed",
        type=int,
        default=0,
        help="random seed; part of the config for reproducibility, "
        "consumed only where randomness is documented (default 0)",
    )


def _add_matrix_set(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--matrix",
        default="chebyshev",
        metavar="SPEC",
        help="node matrix: chebyshev | equispaced | nested:<nodes-file> | "
        "matrix file path (default chebyshev)",
    )
    p.add_argument(
        "--set",
        default=None,
        metavar="FILE",
        help="compact set file (one 'a b' interval per line)",
    )
    p.add_argument(
        "--interval",
        type=float,
        nargs=2,
        default=None,
        metavar=("A", "B"),
        help="interval [A, B] as the compact set (default: the matrix ambient interval)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lebesgue-lab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    growth = sub.add_parser(
        "growth",
        help="Lebesgue constant growth table",
        description="Tabulate the Lebesgue constant of rows 2..n_max+1 over the set.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Columns:\n"
            "  n              degree (row n+1 of the matrix)\n"
            "  lambda_max     Lebesgue constant: sup over the set of the Lebesgue function\n"
            "  argmax_x       smallest maximizing x (ties within the sup tolerance)\n"
            "  uniform_error  sup over the set of |f - L_n f| for the one chosen function\n"
            "  ratio_log      lambda_max / ln(n+1)\n"
            "JSON output carries the same fields per row plus the config echo\n"
            "(command, matrix, set, n_max, function)."
        ),
    )
    _add_matrix_set(growth)
    growth.add_argument("--nmax", type=int, default=10, help="largest degree (default 10)")
    growth.add_argument(
        "--functions",
        nargs="+",
        default=["runge"],
        metavar="F",
        help="exactly one function for the uniform_error column: "
        "abs | runge | exp | step | poly:c0,c1,... | hat:center:halfwidth "
        "(default runge)",
    )
    growth.add_argument(
        "--plot",
        action="store_true",
        help="also render <out>.png with the growth curve (needs --out)",
    )
    _add_common(growth, "csv", ("csv", "json"))
    growth.set_defaults(handler=_cmd_growth)

    converge = sub.add_parser(
        "converge",
        help="uniform interpolation error table",
        description=(
            "Tabulate per (degree, function): the uniform error, the Lebesgue\n"
            "constant, a computable best-approximation upper bound, and the\n"
            "near-best slack (1 + lambda_max) * best_approx_bound - uniform_error,\n"
            "which is nonnegative up to the documented tolerance."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Columns (rows ordered by n, then function name):\n"
            "  n                  degree (row n+1 of the matrix)\n"
            "  function           function name\n"
            "  uniform_error      sup over the set of |f - L_n f|\n"
            "  lambda_max         Lebesgue constant of row n+1 over the set\n"
            "  best_approx_bound  uniform error of the degree-n Chebyshev-point\n"
            "                     interpolant on the set's hull (upper bound for\n"
            "                     the best approximation error)\n"
            "  slack              (1 + lambda_max) * best_approx_bound - uniform_error\n"
            "JSON output carries the same fields per row plus the config echo."
        ),
    )
    _add_matrix_set(converge)
    converge.add_argument("--nmax", type=int, default=10, help="largest degree (default 10)")
    converge.add_argument(
        "--functions",
        nargs="+",
        default=["runge"],
        metavar="F",
        help="functions to interpolate: abs | runge | exp | step | "
        "poly:c0,c1,... | hat:center:halfwidth (default runge)",
    )
    converge.add_argument(
        "--plot",
        action="store_true",
        help="also render <out>.png with per-function error curves (needs --out)",
    )
    _add_common(converge, "csv", ("csv", "json"))
    converge.set_defaults(handler=_cmd_converge)

    faber = sub.add_parser(
        "faber-check",
        help="verdict a candidate interpolating basis",
        description=(
            "Run the interpolating-basis checks on a polynomial sequence file:\n"
            "the triangular zero pattern, node recovery from roots, partial-sum\n"
            "equality against the Newton basis, and the projection-chain\n"
            "conditions on the nested matrix induced by the nodes. Verdicts are\n"
            "data: a failing check still exits 0."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "JSON fields:\n"
            "  candidate              degree ladder deg p_k = k-1 holds\n"
            "  verdict / reason       present when the run stops early\n"
            "  members                number of polynomials\n"
            "  members_checked        how many were checked against nodes\n"
            "  nodes_source           'file' (--nodes) or 'recovered'\n"
            "  nodes                  the nodes used for the checks\n"
            "  zero_pattern           passed, or first violating (k, j, value)\n"
            "  recovery               node recovery outcome (ok, nodes, reason)\n"
            "  recovery_matches_nodes recovered nodes agree with --nodes (when both)\n"
            "  newton_equivalence     partial sums equal the Newton basis's\n"
            "                         (equal, per-member lambdas, witness)\n"
            "  projection_chain       chain/commutation/degree outcomes with\n"
            "                         first witnesses\n"
            "  all_pass               conjunction of the above checks\n"
            "Basis file: one polynomial per line, space-separated monomial\n"
            "coefficients, constant term first; '#' comments. Nodes file: one\n"
            "decimal per line."
        ),
    )
    faber.add_argument("--basis", required=True, metavar="FILE", help="basis candidate file")
    faber.add_argument(
        "--nodes",
        default=None,
        metavar="FILE",
        help="claimed nodes file; omitted means nodes are recovered from the basis",
    )
    _add_common(faber, "json", ("json",))
    faber.set_defaults(handler=_cmd_faber_check)

    porosity = sub.add_parser(
        "porosity",
        help="one-sided lower porosity report",
        description=(
            "Report one-sided lower porosities, their max/min, isolation flags,\n"
            "and the set's extent and measure at chosen points of a compact set."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Columns:\n"
            "  x0                   queried point\n"
            "  p_plus, p_minus      right/left lower porosity over the default\n"
            "                       radius window (empty cells on error rows)\n"
            "  p, p_star            max and min of the two one-sided values\n"
            "  right_isolated       x0 is the right endpoint of its interval\n"
            "  left_isolated        x0 is the left endpoint of its interval\n"
            "  p_star_exceeds_half  both flags: the point is isolated in the set\n"
            "  converged            porosity sweep stable across refinements\n"
            "  set_min, set_max     extent of the set (constant columns)\n"
            "  measure              total length of the set (constant column)\n"
            "  error                'not a point of the set' for bad queries, else empty\n"
            "JSON output groups the same per-point fields under 'points' with the\n"
            "extent under 'extent'. Default points: every interval endpoint and\n"
            "isolated point of the set."
        ),
    )
    porosity.add_argument(
        "--set",
        default=None,
        metavar="FILE",
        help="compact set file (one 'a b' interval per line)",
    )
    porosity.add_argument(
        "--interval",
        type=float,
        nargs=2,
        default=None,
        metavar=("A", "B"),
        help="interval [A, B] as the compact set (default [-1, 1])",
    )
    porosity.add_argument(
        "--points",
        type=float,
        nargs="+",
        default=None,
        metavar="X",
        help="points to query (default: interval endpoints and isolated points)",
    )
    porosity.add_argument(
        "--plot",
        action="store_true",
        help="also render <out>.png with per-point porosities (needs --out)",
    )
    _add_common(porosity, "csv", ("csv", "json"))
    porosity.set_defaults(handler=_cmd_porosity)

    oracle = sub.add_parser(
        "oracle",
        help="cross-validate the Lebesgue function against enumeration",
        description=(
            "Draw 100 random node rows (degrees 1..min(nmax, 8), nodes uniform in\n"
            "[-1, 1] with separation > 1e-3) and 10 random points each from the\n"
            "seeded generator; report the worst point per trial of\n"
            "|lebesgue_function - sign-enumeration oracle|. A final row compares\n"
            "the exhaustive sign-pattern operator-norm probe on the 5-node\n"
            "Chebyshev row over [-1, 1] against its Lebesgue constant."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Columns:\n"
            "  kind               'sample' (per-trial worst point) or 'probe'\n"
            "                     (exhaustive operator-norm row)\n"
            "  trial              1..100 for samples, 0 for the probe row\n"
            "  n                  degree of the drawn row (row has n+1 nodes)\n"
            "  x                  sample point (probe row: argmax of the constant)\n"
            "  lebesgue_function  closed-form value at x (probe row: the constant)\n"
            "  sign_oracle        sign-enumeration value (probe row: the probe)\n"
            "  abs_gap            absolute difference of the previous two\n"
            "  generator          random generator identity (numpy-pcg64)\n"
            "  seed               the configured seed\n"
            "JSON output carries the same fields per row plus generator and seed\n"
            "top-level."
        ),
    )
    oracle.add_argument(
        "--nmax",
        type=int,
        default=8,
        help="cap on drawn degrees; values above 8 are clamped to keep "
        "enumeration exact (default 8)",
    )
    _add_common(oracle, "csv", ("csv", "json"))
    oracle.set_defaults(handler=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    raise SystemExit(main())
