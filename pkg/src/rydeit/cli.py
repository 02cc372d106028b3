"""Command line front end.

Exit codes: 0 success, 1 failed data points or failed validation checks,
2 bad usage or an unreadable sweep spec.
"""

import argparse
import json
import os
import sys

from . import __version__
from .errors import ParameterError, SweepSpecError
from .params import ModelParams
from .sweep import (
    PRESET_NAMES,
    SweepSpec,
    find_null_refraction,
    resolve_jobs,
    run_preset,
    run_sweep,
)
from .validation import LEVELS, run_validation


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rydeit",
        description="Susceptibility sweeps for driven three-band bosonic ensembles.",
    )
    parser.add_argument("--version", action="version", version=f"rydeit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep described by a JSON spec")
    p_sweep.add_argument("spec", help="path to the sweep spec (JSON)")
    p_sweep.add_argument("--out", default=None, help="output basename (default: spec name)")
    p_sweep.add_argument(
        "--format", choices=("csv", "json", "both"), default="both",
        help="which table formats to write",
    )
    p_sweep.add_argument("--jobs", type=int, default=None, help="parallel workers")
    p_sweep.add_argument(
        "--perturb-singular", action="store_true",
        help="retry isolated singular points with a tiny control-drive nudge",
    )

    p_preset = sub.add_parser("preset", help="run a shipped figure preset")
    p_preset.add_argument("name", choices=PRESET_NAMES)
    p_preset.add_argument("--out", default=".", help="output directory")
    p_preset.add_argument("--jobs", type=int, default=None)

    p_val = sub.add_parser("validate", help="run the self-validation suite")
    p_val.add_argument("--level", choices=LEVELS, default="fast")
    p_val.add_argument("--out", default=None, help="write the JSON report here")

    p_null = sub.add_parser(
        "nullrefraction", help="scan particle number for the vanishing-dispersion point"
    )
    p_null.add_argument("--m-max", type=int, default=1000)
    p_null.add_argument("--omega-p", type=float, default=0.1)
    p_null.add_argument("--omega-c", type=float, default=1.0)
    p_null.add_argument("--gamma-e", type=float, default=2.0)
    p_null.add_argument("--gamma-r", type=float, default=0.0)
    p_null.add_argument("--out", default=None, help="write the scan as CSV here")
    return parser


def _cmd_sweep(args) -> int:
    spec = SweepSpec.from_json(args.spec)
    if args.perturb_singular and not spec.perturb_singular:
        spec = SweepSpec(
            solver=spec.solver, params=spec.params, axis=spec.axis, grid=spec.grid,
            axis2=spec.axis2, grid2=spec.grid2, outputs=spec.outputs,
            perturb_singular=True, name=spec.name,
        )
    result = run_sweep(spec, jobs=resolve_jobs(args.jobs))
    base = args.out if args.out else spec.name
    if args.format in ("csv", "both"):
        result.to_csv(base + ".csv")
        print(f"wrote {base}.csv ({len(result.rows)} rows)")
    if args.format in ("json", "both"):
        result.to_json(base + ".json")
        print(f"wrote {base}.json")
    for note in result.notes:
        print(f"note: {note}", file=sys.stderr)
    if result.any_failed:
        failed = [r for r in result.rows if str(r["status"]).startswith("failed")]
        print(f"{len(failed)} of {len(result.rows)} points failed", file=sys.stderr)
        return 1
    return 0


def _cmd_preset(args) -> int:
    results = run_preset(args.name, out_dir=args.out, jobs=args.jobs)
    rc = 0
    for result in results:
        base = os.path.join(args.out, result.spec.name)
        print(f"wrote {base}.csv / .json ({len(result.rows)} rows)")
        if result.any_failed:
            rc = 1
            print(f"{result.spec.name}: contains failed points", file=sys.stderr)
    return rc


def _cmd_validate(args) -> int:
    report = run_validation(level=args.level)
    print(report.summary())
    if args.out:
        report.to_json(args.out)
        print(f"wrote {args.out}")
    return 0 if report.passed else 1


def _cmd_nullrefraction(args) -> int:
    params = ModelParams(
        omega_p=args.omega_p, omega_c=args.omega_c,
        gamma_e=args.gamma_e, gamma_r=args.gamma_r, delta=0.0, m=2,
    )
    res = find_null_refraction(params, m_range=range(2, args.m_max + 1))
    print(
        f"null refraction at m = {res.m} "
        f"(re_chi2 = {res.re_chi2:.3e}, sign change: {res.sign_change})"
    )
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("m,re_chi2\n")
            for m, val in zip(res.scan_m, res.scan_re_chi2):
                fh.write(f"{int(m)},{format(float(val), '.17g')}\n")
        print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "preset": _cmd_preset,
        "validate": _cmd_validate,
        "nullrefraction": _cmd_nullrefraction,
    }
    try:
        return handlers[args.command](args)
    except SweepSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
