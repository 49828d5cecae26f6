"""Command-line front end: batch verification runs with deterministic reports.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 malformed
input or bad parameters, 3 dimension-cap violation.

Reports embed the full run configuration and a content hash of every input
file; identical configurations (including the seed) produce byte-identical
JSON documents.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bodies import GridSet, LatticeSet, VPolytope, load_body, make_simplex
from .bundles import (
    box,
    cross_polytope,
    lshape_grid,
    random_lattice_set,
    random_polytope,
    triangle_simplex,
    two_interval_grid,
    unit_cube,
    interval,
)
from .errors import (
    DimensionCapError,
    InputFormatError,
    PreconditionError,
    SumsetLabError,
)
from .geometry import difference_body, lattice_difference
from .inequalities import (
    BoundForm,
    check_brunn_minkowski,
    check_difference_bound,
    check_koester_katz,
    check_ruzsa_triangle,
    check_slice_lower_bound,
    check_slice_sum_bound,
)
from .rationals import exactify, format_exact
from .report import CheckReport, le_report, scalar_json
from .sigma_analysis import (
    SigmaParams,
    beta_identity_check,
    log_inequality_check,
    sigma,
    sigma_lower_bound,
)
from .simplex import lattice_diff_count, simplex_report, tightness_sweep, trinomial_sum

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 1_000_000
DEFAULT_C_BUDGET = 10.0

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_DIMENSION_CAP = 3


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    seed: int = DEFAULT_SEED
    grid_step: Optional[str] = None
    samples: int = DEFAULT_SAMPLES
    c_budget: float = DEFAULT_C_BUDGET
    output_format: str = "json"
    output_path: Optional[str] = None
    options: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "seed": self.seed,
            "gridStep": self.grid_step,
            "samples": self.samples,
            "cBudget": self.c_budget,
            "outputFormat": self.output_format,
            "outputPath": self.output_path,
            "options": {k: scalar_json(v) for k, v in sorted(self.options.items())},
        }


def _float_repr(x: float) -> str:
    return format(x, ".17g")


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _float_repr(value)
    if isinstance(value, Fraction):
        return format_exact(value)
    return str(value)


def _hash_file(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _report_document(config: RunConfig, checks: list, extra: Optional[dict] = None) -> dict:
    doc = {
        "config": config.to_json_dict(),
        "inputs": {path: _hash_file(path) for path in config.inputs},
        "checks": [c.to_json_dict() for c in checks],
        "summary": {
            "total": len(checks),
            "passed": sum(1 for c in checks if c.passed),
        },
    }
    if extra:
        doc.update(extra)
    return doc


def _emit(config: RunConfig, document: dict, csv_rows: Optional[list] = None) -> None:
    if config.output_format == "csv":
        if csv_rows is None:
            csv_rows = [["name", "lhs", "rhs", "ratio", "errorBudget", "pass"]]
            for c in document["checks"]:
                csv_rows.append([c["name"], c["lhs"], c["rhs"], c["ratio"],
                                 c["errorBudget"], c["pass"]])
        text = "\n".join(",".join(_csv_cell(v) for v in row) for row in csv_rows) + "\n"
    else:
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_status(checks: list) -> None:
    for c in checks:
        tag = "PASS" if c.passed else "FAIL"
        print(f"{tag} {c.name} lhs={scalar_json(c.lhs)} rhs={scalar_json(c.rhs)}",
              file=sys.stderr)


# ---------------------------------------------------------------------------
# per-command drivers


def _expect(body, kind, label):
    if not isinstance(body, kind):
        raise InputFormatError(
            f"{label} must be a {kind.__name__}, got {type(body).__name__}"
        )
    return body


def _run_ruzsa(config: RunConfig) -> list:
    a, b, c = (load_body(p) for p in config.inputs)
    return [check_ruzsa_triangle(_expect(a, LatticeSet, "A"),
                                 _expect(b, LatticeSet, "B"),
                                 _expect(c, LatticeSet, "C"))]


def _run_kk(config: RunConfig) -> list:
    a = load_body(config.inputs[0])
    b = load_body(config.inputs[1])
    x_opt = config.options.get("x")
    checks = []
    if x_opt is not None:
        xs = [tuple(exactify(v) for v in x_opt)]
    elif isinstance(a, LatticeSet):
        xs = sorted(lattice_difference(a, a).points)
    elif isinstance(a, GridSet):
        diffs = {tuple(i - j for i, j in zip(p, q)) for p in a.cells for q in a.cells}
        xs = [tuple(a.cell * d for d in ix) for ix in sorted(diffs)]
    else:
        raise InputFormatError("koester-katz inputs must be lattices or grids")
    for x in xs:
        checks.append(check_koester_katz(a, b, x))
    return checks


def _run_lemma1(config: RunConfig) -> list:
    a = _expect(load_body(config.inputs[0]), VPolytope, "A")
    b = load_body(config.inputs[1])
    hx = exactify(config.grid_step if config.grid_step is not None else "1/20")
    return [check_slice_sum_bound(a, b, hx)]


def _run_lemma2(config: RunConfig) -> list:
    a = _expect(load_body(config.inputs[0]), VPolytope, "A")
    r = exactify(config.options.get("r", Fraction(1, 2)))
    trials = int(config.options.get("trials", 200))
    return [check_slice_lower_bound(a, r, trials=trials, seed=config.seed)]


def _run_bm(config: RunConfig) -> list:
    a = _expect(load_body(config.inputs[0]), VPolytope, "A")
    b = _expect(load_body(config.inputs[1]), VPolytope, "B")
    return [check_brunn_minkowski(a, b)]


def _run_theorem(config: RunConfig) -> list:
    a = _expect(load_body(config.inputs[0]), VPolytope, "A")
    b = load_body(config.inputs[1])
    form = BoundForm(config.options.get("form", "full"))
    return [check_difference_bound(a, b, form, c_budget=config.c_budget)]


def _run_sigma(config: RunConfig) -> tuple[list, list]:
    opts = config.options
    if "n_range" in opts:
        lo, hi = opts["n_range"]
        ns = list(range(lo, hi + 1))
    else:
        ns = [int(opts.get("n", 1))]
    alpha = exactify(opts.get("alpha", 1))
    precision = int(opts.get("precision", 96))
    checks = []
    rows = [["n", "alpha", "sigma", "lowerbound", "ratio"]]
    for n in ns:
        params = SigmaParams(n, alpha)
        value = sigma(params, precision=precision)
        chain = sigma_lower_bound(params, precision=precision)
        checks.append(chain)
        sigma_f = value.to_float()
        lower_f = float(chain.parameters["middle"])
        ratio = sigma_f / lower_f if lower_f else float("inf")
        rows.append([n, alpha, sigma_f, lower_f, ratio])
    return checks, rows


def _run_simplex(config: RunConfig) -> tuple[list, dict, Optional[list]]:
    opts = config.options
    checks = []
    extra: dict = {}
    rows = None
    if "sweep" in opts:
        sweep = tightness_sweep(int(opts["sweep"]))
        extra["tightnessSweep"] = {
            "min": sweep["min"], "max": sweep["max"], "final": sweep["final"],
            "limitReference": sweep["limit_reference"],
            "rows": [{"n": r["n"], "ratio": r["ratio"]} for r in sweep["rows"]],
        }
        rows = [["n", "ratio"]] + [[r["n"], r["ratio"]] for r in sweep["rows"]]
    else:
        n = int(opts.get("n", 2))
        length = exactify(opts.get("L", 1))
        rep = simplex_report(n, length)
        extra["simplexReport"] = rep.to_json_dict()
        expected_sum = Fraction(2) ** n
        import math as _math

        expected_diff = Fraction(_math.comb(2 * n, n))
        checks.append(_named_eq("simplex_sum_ratio", rep.sum_ratio, expected_sum))
        checks.append(_named_eq("simplex_diff_ratio", rep.diff_ratio, expected_diff))
        rows = [["field", "value"]] + [[k, v] for k, v in rep.to_json_dict().items()]
    return checks, extra, rows


def _named_eq(name: str, lhs, rhs) -> CheckReport:
    from .report import eq_report

    return eq_report(name, lhs, rhs)


# ---------------------------------------------------------------------------
# the bundled regression suite


def build_suite_checks(seed: int, c_budget: float) -> list:
    checks: list[CheckReport] = []

    # discrete sumset inequalities, exact
    for i in range(60):
        dim = 1 if i % 2 == 0 else 2
        a = random_lattice_set(seed, f"ruzsa-A-{i}", dim)
        b = random_lattice_set(seed, f"ruzsa-B-{i}", dim)
        c = random_lattice_set(seed, f"ruzsa-C-{i}", dim)
        checks.append(check_ruzsa_triangle(a, b, c))
    for i in range(12):
        dim = 1 if i % 2 == 0 else 2
        a = random_lattice_set(seed, f"kk-A-{i}", dim, max_points=10, coord_range=6)
        b = random_lattice_set(seed, f"kk-B-{i}", dim, max_points=10, coord_range=6)
        for x in sorted(lattice_difference(a, a).points):
            checks.append(check_koester_katz(a, b, x))

    # slice-sum integral bound, n = 1 and 2, convex and grid B
    seg = interval(0, 1)
    square = unit_cube(2)
    triangle = triangle_simplex()
    checks.append(check_slice_sum_bound(seg, seg, Fraction(1, 50)))
    checks.append(check_slice_sum_bound(seg, two_interval_grid(), Fraction(1, 20)))
    checks.append(check_slice_sum_bound(square, square, Fraction(1, 10)))
    checks.append(check_slice_sum_bound(triangle, lshape_grid(), Fraction(1, 8)))

    # slice volume lower bound
    for body, label in ((square, "square"), (triangle, "triangle")):
        for r in (Fraction(0), Fraction(1, 2), Fraction(3, 4)):
            checks.append(check_slice_lower_bound(body, r, trials=40, seed=seed))
    hull3 = random_polytope(seed, "lemma2-3d", 3, points=8)
    checks.append(check_slice_lower_bound(hull3, Fraction(1, 2), trials=15, seed=seed))

    # Brunn-Minkowski with directed rounding
    for i in range(12):
        dim = 1 + i % 4
        a = random_polytope(seed, f"bm-A-{i}", dim, points=dim + 4)
        b = random_polytope(seed, f"bm-B-{i}", dim, points=dim + 4)
        checks.append(check_brunn_minkowski(a, b))

    # difference-body bound, all three forms
    for n in range(1, 5):
        cube = unit_cube(n)
        checks.append(check_difference_bound(cube, cube, BoundForm.FULL, c_budget))
        checks.append(check_difference_bound(cube, cube, BoundForm.A_GE_B, c_budget))
        simp = make_simplex(n, 1)
        checks.append(check_difference_bound(simp, simp, BoundForm.A_GE_B, c_budget))
        big = box([Fraction(3, 2)] * n)
        checks.append(check_difference_bound(simp, big, BoundForm.B_GE_A, c_budget))
    checks.append(check_difference_bound(triangle, lshape_grid(), BoundForm.FULL, c_budget))
    checks.append(check_difference_bound(unit_cube(3), cross_polytope(3, Fraction(3, 2)),
                                         BoundForm.B_GE_A, c_budget))

    # sigma chain, beta identity, log inequality
    for n in list(range(1, 25)) + [49, 100, 400]:
        for alpha in (Fraction(1, 8), Fraction(1), Fraction(8)):
            checks.append(sigma_lower_bound(SigmaParams(n, alpha), precision=72))
    for n in range(1, 31):
        for k in range(1, n + 1):
            checks.append(beta_identity_check(n, k))
    checks.append(log_inequality_check(501))

    # simplex sharpness example
    for n in range(1, 6):
        for length in (Fraction(1), Fraction(7, 2)):
            rep = simplex_report(n, length)
            checks.append(_named_eq(f"simplex_sum_ratio_n{n}_L{length}",
                                    rep.sum_ratio, Fraction(2) ** n))
            import math as _math

            checks.append(_named_eq(f"simplex_diff_ratio_n{n}_L{length}",
                                    rep.diff_ratio, Fraction(_math.comb(2 * n, n))))
    for n in (1, 2):
        for length in (0, 1, 5, 10):
            checks.append(_named_eq(f"lattice_diff_count_n{n}_L{length}",
                                    lattice_diff_count(n, length),
                                    trinomial_sum(n, length)))
    sweep = tightness_sweep(30)
    band_ok = 0.28 <= sweep["min"] and sweep["max"] <= 0.60
    band = le_report("simplex_tightness_band", sweep["max"], 0.60,
                     parameters={"min": sweep["min"], "max": sweep["max"],
                                 "final": sweep["final"],
                                 "limit_reference": sweep["limit_reference"]})
    band.passed = bool(band_ok)
    checks.append(band)
    return checks


def _run_suite(config: RunConfig) -> list:
    return build_suite_checks(config.seed, config.c_budget)


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="Exact and numerical verification of sumset volume inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        p.add_argument("--c-budget", type=float, default=DEFAULT_C_BUDGET)
        p.add_argument("--grid-step", type=str, default=None,
                       help="quadrature / rasterization step (rational like 1/20)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", type=str, default=None)

    p = sub.add_parser("ruzsa", help="triangle inequality |A-B||C| <= |A+C||C+B|")
    p.add_argument("inputs", nargs=3, metavar=("A", "B", "C"))
    common(p)

    p = sub.add_parser("kk", help="containment A_x + B within (A+B)_x")
    p.add_argument("inputs", nargs=2, metavar=("A", "B"))
    p.add_argument("--x", type=str, default=None,
                   help="comma-separated slice vector; default: exhaustive over A-A")
    common(p)

    p = sub.add_parser("lemma1", help="slice-sum integral bound (quadrature)")
    p.add_argument("inputs", nargs=2, metavar=("A", "B"))
    common(p)

    p = sub.add_parser("lemma2", help="slice volume lower bound (sampled x)")
    p.add_argument("inputs", nargs=1, metavar="A")
    p.add_argument("--r", type=str, default="1/2")
    p.add_argument("--trials", type=int, default=200)
    common(p)

    p = sub.add_parser("bm", help="Brunn-Minkowski with directed rounding")
    p.add_argument("inputs", nargs=2, metavar=("A", "B"))
    common(p)

    p = sub.add_parser("theorem", help="difference-body bound, empirical constant")
    p.add_argument("inputs", nargs=2, metavar=("A", "B"))
    p.add_argument("--form", choices=[f.value for f in BoundForm], default="full")
    common(p)

    p = sub.add_parser("sigma", help="sigma sum and its chain of lower bounds")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-range", type=str, default=None, metavar="LO:HI")
    p.add_argument("--alpha", type=str, default="1")
    p.add_argument("--precision", type=int, default=96)
    common(p)

    p = sub.add_parser("simplex", help="simplex sharpness example")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--L", type=str, default="1")
    p.add_argument("--sweep", type=int, default=None, metavar="NMAX")
    common(p)

    p = sub.add_parser("suite", help="bundled regression suite")
    common(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    options = {}
    if args.command == "kk" and args.x is not None:
        options["x"] = [exactify(v) for v in args.x.split(",")]
    if args.command == "lemma2":
        options["r"] = exactify(args.r)
        options["trials"] = args.trials
    if args.command == "theorem":
        options["form"] = args.form
    if args.command == "sigma":
        if args.n_range:
            lo, hi = args.n_range.split(":")
            options["n_range"] = (int(lo), int(hi))
        else:
            options["n"] = args.n if args.n is not None else 1
        options["alpha"] = exactify(args.alpha)
        options["precision"] = args.precision
    if args.command == "simplex":
        if args.sweep is not None:
            options["sweep"] = args.sweep
        else:
            options["n"] = args.n if args.n is not None else 2
            options["L"] = exactify(args.L)
    return RunConfig(
        command=args.command,
        inputs=list(getattr(args, "inputs", []) or []),
        seed=args.seed,
        grid_step=args.grid_step,
        samples=args.samples,
        c_budget=args.c_budget,
        output_format=args.format,
        output_path=args.output,
        options=options,
    )


def run(config: RunConfig) -> int:
    """Execute a configured run; returns the process exit code."""
    try:
        csv_rows = None
        extra = None
        if config.command == "ruzsa":
            checks = _run_ruzsa(config)
        elif config.command == "kk":
            checks = _run_kk(config)
        elif config.command == "lemma1":
            checks = _run_lemma1(config)
        elif config.command == "lemma2":
            checks = _run_lemma2(config)
        elif config.command == "bm":
            checks = _run_bm(config)
        elif config.command == "theorem":
            checks = _run_theorem(config)
        elif config.command == "sigma":
            checks, csv_rows = _run_sigma(config)
        elif config.command == "simplex":
            checks, extra, csv_rows = _run_simplex(config)
        elif config.command == "suite":
            checks = _run_suite(config)
        else:
            raise InputFormatError(f"unknown command {config.command!r}")
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except DimensionCapError as exc:
        print(f"dimension cap: {exc}", file=sys.stderr)
        return EXIT_DIMENSION_CAP
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    document = _report_document(config, checks, extra)
    _emit(config, document, csv_rows)
    _print_status(checks)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except (InputFormatError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
