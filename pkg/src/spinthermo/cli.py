"""Command-line front end.

Subcommands
-----------
eval      print scalar model values (magnetization laws, means, partition)
surface   write one model/quantity grid as CSV or JSON
curves    write the two magnetization curves: CSV + extremum JSON + SVG overlay
compare3  three-observable partition report: both reduced integrands vs. the
          full 3D quadrature arbiter, as JSON
report    figure bundle: curve and surface CSVs plus rendered PNG figures
selftest  run the cross-module invariant suite; exit 0 only if all pass

Exit codes: 0 success, 1 usage/parameter error, 2 numeric failure.
Diagnostics go to stderr; data goes to the requested files (or stdout for
``eval``).  Output files are byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import spinthermo
from spinthermo import analysis, bures, output, semiclassical, specfun
from spinthermo.quadrature import QuadratureError, Tolerance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2

_NUMERIC_ERRORS = (QuadratureError, OverflowError, ArithmeticError, RuntimeError)


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code pinned to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with_message(message))

    def exit_with_message(self, message) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return EXIT_USAGE


def _tolerance(args) -> Tolerance:
    return Tolerance(absolute=args.abs_tol, relative=args.rel_tol,
                     max_subdivisions=args.max_subdivisions)


def _add_tol_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--abs-tol", type=float, default=1e-10,
                   help="absolute quadrature tolerance (default 1e-10)")
    p.add_argument("--rel-tol", type=float, default=1e-10,
                   help="relative quadrature tolerance (default 1e-10)")
    p.add_argument("--max-subdivisions", type=int, default=2000,
                   help="adaptive subdivision budget (default 2000)")


def _add_grid_flags(p: argparse.ArgumentParser, steps_default: int = 41) -> None:
    p.add_argument("--min1", type=float, default=-5.0)
    p.add_argument("--max1", type=float, default=5.0)
    p.add_argument("--steps1", type=int, default=steps_default)
    p.add_argument("--min2", type=float, default=-5.0)
    p.add_argument("--max2", type=float, default=5.0)
    p.add_argument("--steps2", type=int, default=steps_default)


def _metadata(command: str, params: dict) -> dict:
    return {
        "tool": "spinthermo",
        "version": spinthermo.__version__,
        "command": command,
        "parameters": params,
    }


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(text.encode("utf-8"))


# --- eval ----------------------------------------------------------------------

_EVAL_TARGETS = (
    "brillouin", "alternative", "langevin", "quaternion", "dvector",
    "slope", "heat-capacity", "semiclassical-mean", "semiclassical-omega",
    "bures-mean", "bures-partition",
)

_FIXED_DIMENSION = {"brillouin": 1, "langevin": 3, "alternative": 4,
                    "quaternion": 6}


def _require(args, parser, names) -> None:
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            parser.error(f"--{name} is required for target {args.target!r}")


def _cmd_eval(args, parser) -> int:
    target = args.target
    values: tuple[float, ...]
    if target in _FIXED_DIMENSION:
        _require(args, parser, ["beta"])
        values = (specfun.magnetization(_FIXED_DIMENSION[target], args.beta),)
    elif target == "dvector":
        _require(args, parser, ["dimension", "beta"])
        values = (specfun.magnetization(args.dimension, args.beta),)
    elif target == "slope":
        _require(args, parser, ["dimension", "beta"])
        values = (specfun.magnetization_slope(args.dimension, args.beta),)
    elif target == "heat-capacity":
        _require(args, parser, ["dimension", "beta"])
        values = (specfun.heat_capacity(args.dimension, args.beta),)
    elif target == "semiclassical-mean":
        _require(args, parser, ["lambda1", "lambda2"])
        values = semiclassical.mean(args.lambda1, args.lambda2)
    elif target == "semiclassical-omega":
        _require(args, parser, ["lambda1", "lambda2"])
        values = (semiclassical.omega(args.lambda1, args.lambda2),)
    elif target == "bures-mean":
        _require(args, parser, ["beta1", "beta2"])
        values = bures.closed_mean_2(args.beta1, args.beta2)
    else:  # bures-partition
        _require(args, parser, ["beta1", "beta2"])
        r = bures.partition_2(args.beta1, args.beta2, _tolerance(args))
        if not r.converged:
            raise QuadratureError("partition quadrature did not converge")
        values = (r.value,)
    print(" ".join(f"{v:.15g}" for v in values))
    return EXIT_OK


# --- surface ---------------------------------------------------------------------

def _cmd_surface(args, parser) -> int:
    spec = analysis.GridSpec(args.min1, args.max1, args.steps1,
                             args.min2, args.max2, args.steps2)
    tol = _tolerance(args)
    t0 = time.monotonic()
    grid = analysis.surface(args.model, args.quantity, spec, tol)
    params = {
        "model": args.model, "quantity": args.quantity,
        "min1": args.min1, "max1": args.max1, "steps1": args.steps1,
        "min2": args.min2, "max2": args.max2, "steps2": args.steps2,
        "abs_tol": args.abs_tol, "rel_tol": args.rel_tol,
        "max_subdivisions": args.max_subdivisions,
    }
    meta = _metadata("surface", params)
    if grid.errors is not None:
        finite = [e for e in grid.errors if math.isfinite(e)]
        meta["max_quadrature_error"] = max(finite) if finite else 0.0
    meta["failed_points"] = list(grid.failures) if grid.failures else "none"
    text = (output.surface_json(grid, meta) if args.format == "json"
            else output.surface_csv(grid, meta))
    path = Path(args.output)
    _write(path, text)
    print(f"wrote {path} in {time.monotonic() - t0:.2f}s", file=sys.stderr)
    if grid.failures:
        print(f"warning: {len(grid.failures)} grid points failed to converge",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


# --- curves ----------------------------------------------------------------------

def _curve_rows(args):
    if args.steps < 2:
        raise ValueError("curve grid needs at least 2 steps")
    if not args.beta_min < args.beta_max:
        raise ValueError("require beta-min < beta-max")
    span = args.beta_max - args.beta_min
    betas = [args.beta_min + span * i / (args.steps - 1)
             for i in range(args.steps)]
    return analysis.curve_difference(betas)


def _extremum_obj(report: analysis.ExtremumReport) -> dict:
    return {
        "argmax": report.argmax,
        "max_value": report.max_value,
        "bracket": [report.bracket[0], report.bracket[1]],
        "iterations": report.iterations,
    }


def _cmd_curves(args, parser) -> int:
    rows = _curve_rows(args)
    report = analysis.find_max_difference()
    params = {"beta_min": args.beta_min, "beta_max": args.beta_max,
              "steps": args.steps}
    outdir = Path(args.output_dir)
    _write(outdir / "curves.csv",
           output.curve_csv(rows, _metadata("curves", params)))
    _write(outdir / "extremum.json", output.dumps_json({
        "metadata": _metadata("curves", params),
        "report": _extremum_obj(report),
    }))
    _write(outdir / "curves.svg", output.svg_curves(rows))
    print(f"wrote {outdir / 'curves.csv'}, extremum.json, curves.svg",
          file=sys.stderr)
    return EXIT_OK


# --- compare3 ---------------------------------------------------------------------

def _quad_obj(r) -> dict:
    return {"value": r.value, "error_estimate": r.error_estimate,
            "evaluations": r.evaluations, "converged": r.converged}


def _cmd_compare3(args, parser) -> int:
    tol = _tolerance(args)
    temps = (args.beta1, args.beta2, args.beta3)
    results = {choice: bures.partition_3(*temps, tol=tol, integrand=choice)
               for choice in ("j0", "direct", "full3d")}
    full = results["full3d"]

    def diffs(a, b):
        d = abs(a.value - b.value)
        scale = max(abs(a.value), abs(b.value))
        return {"absolute": d, "relative": d / scale if scale else 0.0}

    def matches(r) -> bool:
        return abs(r.value - full.value) <= max(
            1e-8, 10.0 * (r.error_estimate + full.error_estimate))

    verdict = {(True, True): "both", (True, False): "j0",
               (False, True): "direct", (False, False): "neither"}[
        (matches(results["j0"]), matches(results["direct"]))]
    params = {"beta1": args.beta1, "beta2": args.beta2, "beta3": args.beta3,
              "abs_tol": args.abs_tol, "rel_tol": args.rel_tol}
    obj = {
        "metadata": _metadata("compare3", params),
        "report": {
            "partition": {k: _quad_obj(v) for k, v in results.items()},
            "differences": {
                "j0_vs_direct": diffs(results["j0"], results["direct"]),
                "j0_vs_full3d": diffs(results["j0"], full),
                "direct_vs_full3d": diffs(results["direct"], full),
            },
            "verdict": verdict,
        },
    }
    path = Path(args.output)
    _write(path, output.dumps_json(obj))
    print(f"wrote {path} (verdict: {verdict})", file=sys.stderr)
    return EXIT_OK


# --- report -----------------------------------------------------------------------

_REPORT_QUANTITIES = ("mean1", "var1", "cov")


def _cmd_report(args, parser) -> int:
    from spinthermo import plots

    tol = _tolerance(args)
    spec = analysis.GridSpec(-args.half_range, args.half_range, args.steps,
                             -args.half_range, args.half_range, args.steps)
    outdir = Path(args.output_dir)
    t0 = time.monotonic()

    # curves + extremum
    curve_args = argparse.Namespace(beta_min=-args.half_range,
                                    beta_max=args.half_range, steps=201)
    rows = _curve_rows(curve_args)
    report = analysis.find_max_difference()
    curve_params = {"beta_min": -args.half_range, "beta_max": args.half_range,
                    "steps": 201}
    _write(outdir / "curves.csv",
           output.curve_csv(rows, _metadata("report", curve_params)))
    _write(outdir / "extremum.json", output.dumps_json({
        "metadata": _metadata("report", curve_params),
        "report": _extremum_obj(report),
    }))
    _write(outdir / "curves.svg", output.svg_curves(rows))
    plots.render_curves(outdir / "curves.png", rows, report)

    # one sweep of ensemble moments, one of semiclassical; nine surfaces out
    a1, a2 = spec.axis1(), spec.axis2()
    n = spec.steps1 * spec.steps2
    import numpy as np
    values = {("bures", q): np.empty(n) for q in _REPORT_QUANTITIES}
    values.update({("semiclassical", q): np.empty(n)
                   for q in _REPORT_QUANTITIES})
    errors = np.zeros(n)
    failures: list[int] = []
    for i1, b1 in enumerate(a1):
        for i2, b2 in enumerate(a2):
            idx = i1 * spec.steps2 + i2
            sc_mean = semiclassical.mean(float(b1), float(b2))
            sc_sus = semiclassical.susceptibilities(float(b1), float(b2))
            values[("semiclassical", "mean1")][idx] = sc_mean[0]
            values[("semiclassical", "var1")][idx] = sc_sus.var1
            values[("semiclassical", "cov")][idx] = sc_sus.cov
            try:
                bm = bures.moments_2(float(b1), float(b2), tol)
            except QuadratureError:
                failures.append(idx)
                for q in _REPORT_QUANTITIES:
                    values[("bures", q)][idx] = math.nan
                errors[idx] = math.inf
                continue
            errors[idx] = bm.quadrature_error
            for q in _REPORT_QUANTITIES:
                values[("bures", q)][idx] = getattr(bm, q)

    grids = []
    for q in _REPORT_QUANTITIES:
        bg = analysis.SurfaceGrid(spec=spec, quantity=q, model="bures",
                                  values=values[("bures", q)],
                                  errors=errors.copy(),
                                  failures=tuple(failures))
        sg = analysis.SurfaceGrid(spec=spec, quantity=q, model="semiclassical",
                                  values=values[("semiclassical", q)],
                                  errors=None, failures=())
        dg = analysis.SurfaceGrid(spec=spec, quantity=q, model="difference",
                                  values=bg.values - sg.values,
                                  errors=errors.copy(),
                                  failures=tuple(failures))
        grids.extend([bg, sg, dg])

    params = {"steps": args.steps, "half_range": args.half_range,
              "abs_tol": args.abs_tol, "rel_tol": args.rel_tol}
    for grid in grids:
        stem = f"surface_{grid.model}_{grid.quantity}"
        meta = _metadata("report", params)
        meta["model"] = grid.model
        meta["quantity"] = grid.quantity
        if grid.errors is not None:
            finite = [e for e in grid.errors if math.isfinite(e)]
            meta["max_quadrature_error"] = max(finite) if finite else 0.0
        meta["failed_points"] = list(grid.failures) if grid.failures else "none"
        _write(outdir / f"{stem}.csv", output.surface_csv(grid, meta))
        plots.render_surface(outdir / f"{stem}.png", grid)

    print(f"wrote report bundle to {outdir} in {time.monotonic() - t0:.1f}s",
          file=sys.stderr)
    if failures:
        print(f"warning: {len(failures)} grid points failed to converge",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


# --- selftest ---------------------------------------------------------------------

def _cmd_selftest(args, parser) -> int:
    from spinthermo import selftest

    results = selftest.run_checks()
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_NUMERIC


# --- driver -----------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="spinthermo",
                     description="Spin-1/2 thermodynamic model comparison toolkit")
    parser.add_argument("--version", action="version",
                        version=f"spinthermo {spinthermo.__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("eval", help="print scalar model values")
    p.add_argument("target", choices=_EVAL_TARGETS)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--dimension", type=int, default=None)
    p.add_argument("--lambda1", type=float, default=None)
    p.add_argument("--lambda2", type=float, default=None)
    p.add_argument("--beta1", type=float, default=None)
    p.add_argument("--beta2", type=float, default=None)
    _add_tol_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("surface", help="write a model/quantity grid")
    p.add_argument("--model", required=True, choices=analysis.MODELS)
    p.add_argument("--quantity", required=True, choices=analysis.QUANTITIES)
    _add_grid_flags(p)
    _add_tol_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=_cmd_surface)

    p = sub.add_parser("curves", help="write magnetization curves + extremum")
    p.add_argument("--beta-min", type=float, default=-5.0)
    p.add_argument("--beta-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--output-dir", "-o", default=".")
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("compare3",
                       help="three-observable partition comparison report")
    p.add_argument("--beta1", type=float, required=True)
    p.add_argument("--beta2", type=float, required=True)
    p.add_argument("--beta3", type=float, required=True)
    _add_tol_flags(p)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=_cmd_compare3)

    p = sub.add_parser("report", help="figure bundle: CSVs + PNG renders")
    p.add_argument("--steps", type=int, default=41)
    p.add_argument("--half-range", type=float, default=5.0)
    _add_tol_flags(p)
    p.add_argument("--output-dir", "-o", default="report")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("selftest", help="run the invariant suite")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ValueError as exc:
        print(f"spinthermo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"spinthermo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        print(f"spinthermo: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
