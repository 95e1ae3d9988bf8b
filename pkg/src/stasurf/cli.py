"""Command line front end.

Subcommands: generate, invert, bjorling, verify, report, section.
Exit codes: 0 on success, 1 when a verification fails, 2 for config
or usage errors.  The output directory defaults to $STASURF_OUT_DIR,
then the current directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bjorling import orientation_holonomy, schwarz_solve, solve_stationary_bjorling
from .config import (
    BJORLING_PRESETS,
    SURFACE_PRESETS,
    bjorling_data_from_config,
    load_config,
    preset_surface,
    surface_from_config,
)
from .errors import AmbiguousTransport, ConfigError, SurfaceError
from .inversion import invert_surface, verify_duality
from .meshing import cross_section, export_obj, residual_report, sample_grid
from .verification import SCENARIOS, run_all

__all__ = ["main"]


def _add_surface_args(sub, default_prefix):
    src = sub.add_mutually_exclusive_group()
    src.add_argument("--surface", choices=sorted(SURFACE_PRESETS),
                     help="built-in surface preset")
    src.add_argument("--config", metavar="FILE",
                     help="JSON surface config file")
    sub.add_argument("--grid", type=int, nargs=2, default=[64, 64],
                     metavar=("NU", "NV"), help="sampling grid")
    sub.add_argument("--out-dir", default=None,
                     help="output directory (default $STASURF_OUT_DIR or .)")
    sub.add_argument("--prefix", default=default_prefix,
                     help="output file name prefix")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for grid sampling")
    sub.add_argument("--origin-ball", type=float, default=0.0,
                     help="mask vertices with |p| below this radius")
    sub.add_argument("--step", type=float, default=1e-4,
                     help="relative finite-difference step")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="stasurf",
        description="stationary surfaces: generation, inversion, "
                    "Bjorling solves, verification, reports, sections")
    subs = parser.add_subparsers(dest="command", required=True)

    g = subs.add_parser("generate", help="sample a surface and write an OBJ mesh")
    _add_surface_args(g, "surface")
    g.add_argument("--alpha", type=float, default=None,
                   help="also compute geometry and residuals for this exponent")

    inv = subs.add_parser("invert", help="invert a surface through the unit "
                                         "sphere, then write an OBJ mesh")
    _add_surface_args(inv, "inverted")
    inv.add_argument("--alpha", type=float, default=None,
                     help="also compute geometry and residuals for this exponent")

    bj = subs.add_parser("bjorling", help="solve a Bjorling problem and mesh "
                                          "the resulting strip")
    src = bj.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=sorted(BJORLING_PRESETS),
                     help="built-in curve and normal data")
    src.add_argument("--config", metavar="FILE",
                     help="JSON Bjorling data config")
    bj.add_argument("--stationary", action="store_true",
                    help="solve the inversion-transformed problem instead "
                         "of the minimal one")
    bj.add_argument("--grid", type=int, nargs=2, default=[128, 17],
                    metavar=("NS", "NT"), help="solver and meshing grid")
    bj.add_argument("--out-dir", default=None)
    bj.add_argument("--prefix", default=None,
                    help="output file name prefix (default: preset name)")

    v = subs.add_parser("verify", help="check stationarity and the inversion "
                                       "duality law, or run acceptance scenarios")
    _add_surface_args(v, "verify")
    v.add_argument("--alpha", type=float, default=None,
                   help="stationarity exponent to test")
    v.add_argument("--tol", type=float, default=1e-8,
                   help="residual tolerance for the verdict")
    v.add_argument("--json", metavar="FILE", default=None,
                   help="also write the duality report as JSON")
    v.add_argument("--scenario", default=None,
                   metavar="NAME",
                   help="run an acceptance scenario ('all' runs every one)")

    r = subs.add_parser("report", help="write OBJ + residual CSV + JSON summary")
    _add_surface_args(r, "report")
    r.add_argument("--alpha", type=float, required=True,
                   help="stationarity exponent for the residual columns")

    s = subs.add_parser("section", help="cut a surface mesh with a plane and "
                                        "write the polylines as CSV")
    _add_surface_args(s, "section")
    s.add_argument("--plane-point", type=float, nargs=3, default=[0.0, 0.0, 0.0],
                   metavar=("X", "Y", "Z"))
    s.add_argument("--plane-normal", type=float, nargs=3, default=[1.0, 0.0, 0.0],
                   metavar=("X", "Y", "Z"))
    return parser


def _out_dir(args) -> str:
    d = args.out_dir or os.environ.get("STASURF_OUT_DIR") or "."
    os.makedirs(d, exist_ok=True)
    return d


def _surface_from_args(args):
    if getattr(args, "config", None):
        return surface_from_config(load_config(args.config))
    if getattr(args, "surface", None):
        return preset_surface(args.surface)
    raise ConfigError("provide --surface or --config")


def _cmd_mesh(args, invert: bool) -> int:
    surf = _surface_from_args(args)
    if invert:
        surf = invert_surface(surf)
    mesh = sample_grid(surf, args.grid[0], args.grid[1], alpha=args.alpha,
                       with_geometry=args.alpha is not None,
                       origin_ball=args.origin_ball, step=args.step,
                       threads=args.threads)
    out = _out_dir(args)
    path = os.path.join(out, f"{args.prefix}.obj")
    export_obj(mesh, path)
    print(f"wrote {path} ({int(mesh.valid.sum())} vertices, "
          f"{len(mesh.faces)} faces)")
    if args.alpha is not None:
        summary = residual_report(mesh)
        print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _cmd_bjorling(args) -> int:
    if args.config:
        data = bjorling_data_from_config(load_config(args.config))
        name = args.prefix or "bjorling"
    elif args.preset:
        data = BJORLING_PRESETS[args.preset]()
        name = args.prefix or args.preset
    else:
        raise ConfigError("provide --preset or --config")
    grid = (args.grid[0], args.grid[1])
    solver = solve_stationary_bjorling if args.stationary else schwarz_solve
    surf = solver(data, grid=grid)
    mode = "stationary" if args.stationary else "minimal"
    mesh = sample_grid(surf, grid[0], max(grid[1], 3))
    out = _out_dir(args)
    path = os.path.join(out, f"{name}_{mode}.obj")
    export_obj(mesh, path)
    print(f"wrote {path}")
    print(f"strip half-width: {surf.info['strip_halfwidth']:.6g}")
    if surf.periodic_u:
        try:
            print(f"normal holonomy around the core loop: "
                  f"{orientation_holonomy(surf, 0.0):+d}")
        except AmbiguousTransport as exc:
            print(f"normal holonomy: ambiguous ({exc})")
    return 0


def _cmd_verify(args) -> int:
    if args.scenario is not None:
        names = list(SCENARIOS) if args.scenario == "all" else [args.scenario]
        unknown = [n for n in names if n not in SCENARIOS]
        if unknown:
            raise ConfigError(f"unknown scenario {unknown[0]!r}; choose from "
                              f"{sorted(SCENARIOS)} or 'all'")
        results = run_all(names, stream=sys.stdout)
        return 0 if all(r.passed for r in results) else 1
    if args.alpha is None:
        raise ConfigError("verify needs --alpha (or --scenario)")
    surf = _surface_from_args(args)
    rep = verify_duality(surf, args.alpha, grid=tuple(args.grid),
                         tol=args.tol, step=args.step)
    print(f"alpha = {rep.alpha:g}, dual exponent = {rep.dual_alpha:g}")
    print(f"max |residual| on source: {rep.max_abs_residual_source:.6e}")
    print(f"max |residual| on image:  {rep.max_abs_residual_image:.6e}")
    print(f"max duality law defect:   {rep.max_law_defect:.6e}")
    stationary = rep.max_abs_residual_source <= args.tol
    print(f"stationary at alpha = {rep.alpha:g}: "
          f"{'yes' if stationary else 'no'} (tol {args.tol:g})")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if stationary else 1


def _cmd_report(args) -> int:
    surf = _surface_from_args(args)
    mesh = sample_grid(surf, args.grid[0], args.grid[1], alpha=args.alpha,
                       with_geometry=True, origin_ball=args.origin_ball,
                       step=args.step, threads=args.threads)
    out = _out_dir(args)
    obj_path = os.path.join(out, f"{args.prefix}.obj")
    csv_path = os.path.join(out, f"{args.prefix}_residuals.csv")
    json_path = os.path.join(out, f"{args.prefix}_summary.json")
    export_obj(mesh, obj_path)
    summary = residual_report(mesh, csv_path=csv_path, json_path=json_path)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _cmd_section(args) -> int:
    surf = _surface_from_args(args)
    mesh = sample_grid(surf, args.grid[0], args.grid[1],
                       origin_ball=args.origin_ball, threads=args.threads)
    cs = cross_section(mesh, args.plane_point, args.plane_normal)
    out = _out_dir(args)
    path = os.path.join(out, f"{args.prefix}_section.csv")
    rows = ["curve,x,y,z"]
    for i, poly in enumerate(cs.polylines):
        for p in poly:
            rows.append(f"{i}," + ",".join(f"{x:.17g}" for x in p))
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")
    print(f"wrote {path} ({cs.n_curves} curves, {cs.total_points} points)")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_mesh(args, invert=False)
        if args.command == "invert":
            return _cmd_mesh(args, invert=True)
        if args.command == "bjorling":
            return _cmd_bjorling(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "report":
            return _cmd_report(args)
        if args.command == "section":
            return _cmd_section(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SurfaceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
