"""Command-line front end.

Exit status: 0 success, 1 invalid input, 2 a checked property failed.  Errors
print one line ``nrange: error: <kind>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import CATALOG, CatalogError, closed_form
from .convexgeom import ConvexRegion, SupportSample, points_inside
from .eigfun import StepFunction, StepFunctionError, majorizes
from .matrixops import MatrixError, as_matrix
from .oracle import OracleError, sample_orbit_cloud, sample_projection_cloud
from .properties import SUITES, run_suites
from .range_engine import RangeReport, WeightError, WeightSpec, compute_range
from .spectral import ModelError, SpectralModel
from .svg import render_svg

EXIT_OK, EXIT_INVALID, EXIT_CHECK = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from exc


def _load_model(path):
    return SpectralModel.from_dict(_read_json(path))


def parse_weight(text):
    kind, _, arg = text.partition(":")
    if kind == "alpha":
        try:
            return WeightSpec.from_alpha(float(arg))
        except ValueError as exc:
            raise InputError(f"bad alpha weight {text!r}: {exc}") from exc
    if kind == "step":
        return WeightSpec.from_step(StepFunction.from_dict(_read_json(arg)))
    raise InputError(f"weight must be alpha:<float> or step:<path>, got {text!r}")


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_range(args):
    model = _load_model(args.operator)
    report = compute_range(model, parse_weight(args.weight), args.directions, args.resolution)
    csv_text = report.region.to_csv()
    _write(args.output, csv_text)
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=1))
    if args.svg:
        Path(args.svg).write_text(render_svg(csv_text))
    return EXIT_OK


def cmd_support(args):
    model = _load_model(args.operator)
    report = compute_range(model, parse_weight(args.weight), args.directions, args.resolution)
    _write(args.output, report.region.support.to_csv())
    return EXIT_OK


def cmd_catalog(args):
    params = {k: v for k, v in (("psi", args.psi), ("mean", args.mean), ("variance", args.variance)) if v is not None}
    form = closed_form(args.name, params, args.alpha)
    print(json.dumps({"name": args.name, "alpha": args.alpha, "params": params, **form.to_dict()}))
    return EXIT_OK


def _load_region(path):
    text = Path(path).read_text()
    if path.endswith(".csv"):
        return ConvexRegion.from_csv(text)
    return RangeReport.region_from_dict(json.loads(text))


def cmd_oracle(args):
    model = _load_model(args.operator)
    if model.kind != "matrix":
        raise InputError("oracle needs a matrix operator")
    t = model.matrix
    n = t.shape[0]
    if args.orbit:
        c = SpectralModel.from_dict(_read_json(args.orbit))
        if c.kind != "matrix":
            raise InputError("--orbit needs a matrix C")
        cloud = sample_orbit_cloud(t, c.matrix, args.samples, args.seed)
    else:
        if args.k is None:
            raise InputError("--k is required for projection clouds")
        cloud = sample_projection_cloud(t, args.k, args.samples, args.seed)
    if args.output:
        Path(args.output).write_text(cloud.to_csv())
    if args.region:
        region = _load_region(args.region)
    elif args.orbit:
        eig = np.linalg.eigvalsh(as_matrix(c.matrix))[::-1]
        weight = WeightSpec.from_step(StepFunction(np.arange(n + 1) / n, eig))
        region = compute_range(model, weight, args.directions).region
    else:
        region = compute_range(model, WeightSpec.from_alpha(args.k / n), args.directions).region
    inside = points_inside(region, cloud.points, args.inflation)
    outside = int(np.sum(~inside))
    if outside:
        print(f"{outside} of {cloud.sample_count} samples outside (inflation {args.inflation:g})")
        return EXIT_CHECK
    print(f"all samples inside (inflation {args.inflation:g})")
    return EXIT_OK


def cmd_majorize(args):
    f = StepFunction.from_dict(_read_json(args.f))
    g = StepFunction.from_dict(_read_json(args.g))
    print(json.dumps(majorizes(f, g, args.tol).to_dict()))
    return EXIT_OK


def cmd_check(args):
    model = _load_model(args.operator)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(model, names, args.trials, args.seed, args.directions, args.resolution)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


def build_parser():
    p = argparse.ArgumentParser(prog="nrange", description="C-numerical and alpha-numerical ranges")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def grid_args(sp, resolution=True):
        sp.add_argument("--directions", type=int, default=720)
        if resolution:
            sp.add_argument("--resolution", type=int, default=4096)

    sp = sub.add_parser("range", help="compute V_C(T) as a polygon")
    sp.add_argument("--operator", required=True)
    sp.add_argument("--weight", default="alpha:0.5")
    grid_args(sp)
    sp.add_argument("-o", "--output", help="polygon CSV (default stdout)")
    sp.add_argument("--report", help="RangeReport JSON")
    sp.add_argument("--svg", help="SVG rendering of the polygon")
    sp.set_defaults(func=cmd_range)

    sp = sub.add_parser("support", help="supporting function samples as theta,g CSV")
    sp.add_argument("--operator", required=True)
    sp.add_argument("--weight", default="alpha:0.5")
    grid_args(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_support)

    sp = sub.add_parser("catalog", help="closed-form alpha-numerical ranges")
    sp.add_argument("name", choices=CATALOG)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--psi", type=float)
    sp.add_argument("--mean", type=float)
    sp.add_argument("--variance", type=float)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("oracle", help="Monte-Carlo cloud and inclusion verdict")
    sp.add_argument("--operator", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--orbit", help="matrix C for unitary-orbit sampling")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--region", help="RangeReport JSON or polygon CSV; computed if omitted")
    sp.add_argument("--inflation", type=float, default=1e-8)
    sp.add_argument("-o", "--output", help="cloud CSV")
    grid_args(sp, resolution=False)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("majorize", help="does F majorize G?")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_majorize)

    sp = sub.add_parser("check", help="run randomized property suites")
    sp.add_argument("suite", choices=[*SUITES, "all"])
    sp.add_argument("--operator", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    grid_args(sp)
    sp.set_defaults(func=cmd_check, resolution=1024)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ModelError, WeightError, StepFunctionError, MatrixError, CatalogError, OracleError) as exc:
        print(f"nrange: error: validation: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"nrange: error: validation: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
