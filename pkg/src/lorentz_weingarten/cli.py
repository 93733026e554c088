"""Command-line entry point ``lw-surf``.

Exit codes: 0 success, 1 failed verification or a numerical/geometric error,
2 usage or configuration errors.  Values that start with a minus sign must be
attached with ``=``, e.g. ``--range=-1,1``.
"""

from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from .config import read_config
from .errors import GeometryError, MissingParam, PreconditionViolated, UnknownName
from .foliation import coefficient_report, write_coefficient_csv
from .geometry import curvature_from_jet, eq5_residual_from_jet, weingarten_residual
from .mesh import export_obj, sample_mesh
from .rotational import (
    AxisKind, ProfileSpec, catalog_listing, integrate_raw_ode, integrate_spacelike_profile,
    integrate_timelike_profile, lightlike_profile, write_profile_csv,
)


class UsageError(Exception):
    pass


def _floats(text: str, count: int, what: str):
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected {count} comma-separated numbers, got {text!r}") from None
    if len(vals) != count:
        raise UsageError(f"{what}: expected {count} comma-separated numbers, got {text!r}")
    return vals


def _grid(text: str):
    try:
        nu, nv = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"--grid: expected NUxNV, got {text!r}") from None
    if nu < 2 or nv < 2:
        raise UsageError("--grid: both sizes must be at least 2")
    return nu, nv


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def cmd_catalog(args, out):
    for name, m, n in catalog_listing():
        m_text = "caller" if m is None else f"{m:g}"
        out.write(f"{name} m={m_text} n={n:g}\n")
    return 0


def cmd_curvature(args, out):
    cfg = read_config(args.config)
    u, v = _floats(args.at, 2, "--at")
    cd = curvature_from_jet(cfg.patch.jet(u, v))
    out.write(_dump(cd.as_dict()) + "\n")
    return 0


def cmd_profile(args, out):
    axis = AxisKind.parse(args.axis)
    lo, hi = _floats(args.range, 2, "--range")
    u0 = lo if args.u0 is None else args.u0
    if args.method == "raw":
        if args.zp0 is None:
            raise UsageError("--method raw needs --zp0")
        prof = integrate_raw_ode(axis, args.m, (u0, args.z0, args.zp0), (lo, hi), args.step)
    elif axis is AxisKind.TIMELIKE:
        spec = ProfileSpec(args.m, args.c, args.sign, u0, args.z0, args.lambda_)
        prof = integrate_timelike_profile(spec, (lo, hi), args.tol or 1e-11)
    elif axis is AxisKind.SPACELIKE:
        spec = ProfileSpec(args.m, args.c, args.sign, u0, args.z0, args.lambda_)
        prof = integrate_spacelike_profile(spec, (lo, hi), args.tol or 1e-10)
    else:
        prof = lightlike_profile(args.m, args.c, args.lambda_, (lo, hi))
    write_profile_csv(prof, args.out)
    if prof.truncated:
        print(f"profile truncated at u = {prof.u_range[1]!r}", file=sys.stderr)
    return 0


def cmd_verify(args, out):
    cfg = read_config(args.config)
    if cfg.weingarten is None:
        raise UsageError("the configuration has no weingarten {m, n} block")
    nu, nv = _grid(args.grid) if args.grid else cfg.grid
    patch, spec = cfg.patch, cfg.weingarten
    us, vs = patch.grid(nu, nv)
    max_eq5 = max_w = 0.0
    bad = 0
    for u in us:
        for v in vs:
            jet = patch.jet(float(u), float(v))
            max_eq5 = max(max_eq5, float(eq5_residual_from_jet(jet, spec)))
            try:
                cd = curvature_from_jet(jet)
            except GeometryError:
                bad += 1
                continue
            max_w = max(max_w, weingarten_residual(cd, spec))
    ok = bad == 0 and max_eq5 <= args.tol and max_w <= args.tol
    out.write(_dump({
        "surface": patch.label, "m": spec.m, "n": spec.n, "grid": [nu, nv],
        "max_eq5_residual": max_eq5, "max_weingarten_residual": max_w,
        "non_spacelike_points": bad, "tol": args.tol, "pass": ok,
    }) + "\n")
    return 0 if ok else 1


def cmd_coeffs(args, out):
    cfg = read_config(args.config)
    if cfg.family is None:
        raise UsageError("coeffs needs a configuration of kind 'foliated'")
    if cfg.weingarten is None:
        raise UsageError("the configuration has no weingarten {m, n} block")
    rows = coefficient_report(cfg.family, cfg.weingarten, args.u, method=args.method)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_coefficient_csv(rows, fh)
    else:
        write_coefficient_csv(rows, out)
    return 0


def cmd_mesh(args, out):
    cfg = read_config(args.config)
    nu, nv = _grid(args.grid) if args.grid else cfg.grid
    mesh = sample_mesh(cfg.patch, nu, nv)
    export_obj(mesh, args.out)
    flagged = int((~mesh.spacelike).sum())
    if flagged:
        print(f"{flagged} vertices are not spacelike", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lw-surf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", help="list closed-form surfaces and their (m, n)")

    s = sub.add_parser("curvature", help="curvature data at one parameter point")
    s.add_argument("--config", required=True)
    s.add_argument("--at", required=True, metavar="U,V")

    s = sub.add_parser("profile", help="integrate a generating curve to CSV")
    s.add_argument("--axis", required=True, choices=[a.value for a in AxisKind])
    s.add_argument("--m", type=float, required=True)
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--u0", type=float)
    s.add_argument("--z0", type=float, default=0.0)
    s.add_argument("--zp0", type=float)
    s.add_argument("--sign", type=int, choices=[1, -1], default=1)
    s.add_argument("--lambda", dest="lambda_", type=float, default=0.0)
    s.add_argument("--range", required=True, metavar="A,B")
    s.add_argument("--tol", type=float)
    s.add_argument("--method", choices=["integrate", "raw"], default="integrate")
    s.add_argument("--step", type=float, default=1e-3)
    s.add_argument("--out", required=True)

    s = sub.add_parser("verify", help="grid check of the Weingarten relation")
    s.add_argument("--config", required=True)
    s.add_argument("--grid", metavar="NUxNV")
    s.add_argument("--tol", type=float, default=1e-6)

    s = sub.add_parser("coeffs", help="coefficient report of a foliated family")
    s.add_argument("--config", required=True)
    s.add_argument("--u", type=float, required=True)
    s.add_argument("--method", choices=["dft", "lstsq"], default="dft")
    s.add_argument("--out")

    s = sub.add_parser("mesh", help="sample a surface and write OBJ")
    s.add_argument("--config", required=True)
    s.add_argument("--grid", metavar="NUxNV")
    s.add_argument("--out", required=True)
    return p


COMMANDS = {
    "catalog": cmd_catalog, "curvature": cmd_curvature, "profile": cmd_profile,
    "verify": cmd_verify, "coeffs": cmd_coeffs, "mesh": cmd_mesh,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, jsonschema.ValidationError, json.JSONDecodeError,
            UnknownName, MissingParam) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else exc
        print(f"lw-surf {args.command}: {msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lw-surf {args.command}: {exc}", file=sys.stderr)
        return 2
    except (GeometryError, PreconditionViolated, OverflowError, ZeroDivisionError) as exc:
        print(f"lw-surf {args.command}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # remaining ValueErrors come from invalid parameters in the configuration
        print(f"lw-surf {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
