"""``heisenberg-iso`` command-line front end.

Exit codes: 0 ok, 2 usage or malformed input, 3 numerical failure,
4 invariant failure, 5 I/O error.  Output is written to a temporary file
and renamed into place, so a failed run never leaves a partial file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from .calibration import calibration_constant
from .errors import DomainError, InvariantError, QuadratureError, ValidationError
from .families import bump_set, cone_set, random_family, slab_set, sphere_set
from .geodesics import closed_form
from .isoperimetry import deficit
from .pansu import PansuSphere, sphere_geometry
from .radial import RadialSet, from_values, validate
from .verify import run_verify

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_INVARIANT, EXIT_IO = 0, 2, 3, 4, 5
DEFAULT_TOL = 1e-8
FAMILIES = ("sphere", "slab", "bump", "cone", "random")
SWEEP_PARAM = {"sphere": "lam", "slab": "h", "bump": "amplitude", "cone": "h"}


class UsageError(Exception):
    pass


# -- formatting --------------------------------------------------------------

def fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "NaN" if math.isnan(x) else ("Infinity" if x > 0 else "-Infinity")
    return format(x, ".17g")


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    return json.dumps(obj)


def dumps(obj) -> str:
    """JSON with insertion-ordered keys and floats at 17 significant digits."""
    return _encode(obj, 2, 0) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_atomic(output, text)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(float(v)) for v in row])
    return buf.getvalue()


# -- argument checks --------------------------------------------------------

def _positive(value, flag):
    if not (math.isfinite(value) and value > 0):
        raise UsageError(f"{flag} must be positive, got {value!r}")
    return value


def _dimension(n):
    if n < 1:
        raise UsageError(f"--n must be >= 1, got {n}")
    return n


def _float_list(text, flag):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated list of numbers, got {text!r}") from None


def _int_list(text, flag):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated list of integers, got {text!r}") from None


# -- profile documents -------------------------------------------------------

def load_profile(path: str) -> RadialSet:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read profile document {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"profile document {path!r} is not valid JSON: {exc}") from None
    return profile_from_document(doc)


def profile_from_document(doc) -> RadialSet:
    if not isinstance(doc, dict):
        raise UsageError("profile document must be a JSON object")
    missing = [k for k in ("n", "r_cyl", "grid", "u_plus", "u_minus") if k not in doc]
    if missing:
        raise UsageError(f"profile document is missing field(s): {', '.join(missing)}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise UsageError(f"n must be an integer, got {n!r}")
    arrays = {}
    for key in ("grid", "u_plus", "u_minus"):
        vals = doc[key]
        if not isinstance(vals, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals):
            raise UsageError(f"{key} must be an array of numbers")
        arrays[key] = np.asarray(vals, dtype=np.float64)
    lengths = {len(a) for a in arrays.values()}
    if len(lengths) != 1:
        raise UsageError("grid, u_plus and u_minus must have equal length")
    r_cyl = doc["r_cyl"]
    if not isinstance(r_cyl, (int, float)) or isinstance(r_cyl, bool):
        raise UsageError(f"r_cyl must be a number, got {r_cyl!r}")
    try:
        E = from_values(n, float(r_cyl), arrays["grid"], arrays["u_plus"], arrays["u_minus"])
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    problems = validate(E)
    if problems:
        raise ValidationError(problems)
    return E


def family_set(args, **override) -> RadialSet:
    p = {"lam": args.lam, "h": args.h, "r": args.r, "amplitude": args.amplitude}
    p.update(override)
    n, family = args.n, args.family
    if family == "sphere":
        return sphere_set(_positive(p["lam"], "--lambda"), n, args.knots)
    if family == "slab":
        return slab_set(p["h"], _positive(p["r"], "--r"), n)
    if family == "cone":
        return cone_set(_positive(p["h"], "--h"), _positive(p["r"], "--r"), n)
    if family == "bump":
        return bump_set(p["amplitude"], _positive(p["lam"], "--lambda"), n, args.knots)
    return random_family(n, 1, seed=args.seed)[0]


# -- subcommands -------------------------------------------------------------

def cmd_sphere(args) -> int:
    lam = _positive(args.lam, "--lambda")
    n = _dimension(args.n)
    S = PansuSphere(n, lam)
    geo = sphere_geometry(S, args.tol)
    report = {
        "area": geo.area,
        "volume": geo.volume,
        "pole_height": geo.pole_height,
        "equator_radius": S.equator_radius,
        "kappa": calibration_constant(n, lam, seed=args.seed).kappa,
    }
    emit(dumps(report), args.output)
    return EXIT_OK


def cmd_geodesic(args) -> int:
    n = _dimension(args.n)
    if not math.isfinite(args.lam):
        raise UsageError(f"--lambda must be finite, got {args.lam!r}")
    if args.samples < 2:
        raise UsageError(f"--samples must be >= 2, got {args.samples}")
    v = np.asarray(_float_list(args.velocity, "--velocity")) if args.velocity else np.eye(2 * n)[0]
    if v.size != 2 * n:
        raise UsageError(f"--velocity needs 2n = {2 * n} components, got {v.size}")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise UsageError("--velocity must be non-zero")
    v = v / norm
    if args.length is None:
        if args.lam == 0.0:
            raise UsageError("--length is required when --lambda is 0")
        length = math.pi / abs(args.lam)
    else:
        length = args.length
    if not (math.isfinite(length) and length > 0):
        raise UsageError(f"--length must be positive, got {length!r}")
    z0 = np.zeros(2 * n)
    if args.start == "origin":
        t0 = 0.0
    else:
        if args.lam == 0.0:
            raise UsageError("--start south-pole needs a non-zero --lambda")
        t0 = -PansuSphere(n, abs(args.lam)).pole_height
    s = np.linspace(0.0, length, args.samples)
    z, t, _ = closed_form(args.lam, z0, t0, v, s)
    header = ["s"] + [f"{c}_{i}" for i in range(1, n + 1) for c in ("x", "y")] + ["t"]
    rows = np.column_stack([s, z, t])
    emit(csv_text(header, rows), args.output)
    return EXIT_OK


def _deficit_ok(report, tol) -> bool:
    return report.deficit >= -tol * max(1.0, report.perimeter)


def cmd_deficit(args) -> int:
    _dimension(args.n)
    if args.input is not None:
        E = load_profile(args.input)
    elif args.family is not None:
        E = family_set(args)
    else:
        raise UsageError("deficit needs --input PATH or --family NAME")
    report = deficit(E, args.tol)
    emit(dumps(report.as_dict()), args.output)
    return EXIT_OK if _deficit_ok(report, args.tol) else EXIT_INVARIANT


def cmd_sweep(args) -> int:
    _dimension(args.n)
    if args.family not in SWEEP_PARAM:
        raise UsageError(f"--family for sweep must be one of {', '.join(SWEEP_PARAM)}")
    if not (math.isfinite(args.start) and math.isfinite(args.stop)) or args.start > args.stop:
        raise UsageError(f"sweep range must satisfy --start <= --stop, got [{args.start!r}, {args.stop!r}]")
    if args.steps < 1:
        raise UsageError(f"--steps must be >= 1, got {args.steps}")
    if args.steps > 1 and args.start == args.stop:
        raise UsageError("an empty range needs --steps 1")
    values = np.linspace(args.start, args.stop, args.steps)
    key = SWEEP_PARAM[args.family]
    rows = []
    ok = True
    for value in values:
        rep = deficit(family_set(args, **{key: float(value)}), args.tol)
        ok = ok and _deficit_ok(rep, args.tol)
        rows.append([rep.volume, rep.perimeter, rep.mu, rep.sphere_perimeter, rep.deficit])
    emit(csv_text(["volume", "perimeter", "mu", "sphere_perimeter", "deficit"], rows), args.output)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_verify(args) -> int:
    ns = [_dimension(n) for n in _int_list(args.n_list, "--n")]
    lams = [_positive(v, "--lambda") for v in _float_list(args.lam_list, "--lambda")]
    if not ns or not lams:
        raise UsageError("verify needs at least one n and one lambda")
    if args.tol is not None and not (args.tol >= 0):
        raise UsageError(f"--tol must be non-negative, got {args.tol!r}")
    summary = run_verify(ns, lams, seed=args.seed, threshold=args.tol, inject_sign_error=args.inject_sign_error)
    emit(dumps(summary), args.output)
    return EXIT_OK if summary["passed"] else EXIT_INVARIANT


# -- parser --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", default=None, help="write here instead of stdout")

    p = _Parser(prog="heisenberg-iso", description="Isoperimetric computations in the Heisenberg group.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("sphere", parents=[common], help="area, volume and calibration constant of a sphere")
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_sphere)

    gp = sub.add_parser("geodesic", parents=[common], help="trace a geodesic as CSV")
    gp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    gp.add_argument("--n", type=int, default=1)
    gp.add_argument("--start", choices=("origin", "south-pole"), default="origin")
    gp.add_argument("--velocity", default=None, help="comma-separated horizontal velocity (normalized)")
    gp.add_argument("--length", type=float, default=None, help="default pi/|lambda|")
    gp.add_argument("--samples", type=int, default=101)
    gp.set_defaults(func=cmd_geodesic)

    fam = _Parser(add_help=False)
    fam.add_argument("--n", type=int, default=1)
    fam.add_argument("--tol", type=float, default=DEFAULT_TOL)
    fam.add_argument("--lambda", dest="lam", type=float, default=1.0)
    fam.add_argument("--h", type=float, default=1.0)
    fam.add_argument("--r", type=float, default=1.0)
    fam.add_argument("--amplitude", type=float, default=0.05)
    fam.add_argument("--knots", type=int, default=200)

    dp = sub.add_parser("deficit", parents=[common, fam], help="isoperimetric deficit of one set")
    src = dp.add_mutually_exclusive_group()
    src.add_argument("--input", default=None, help="profile document (JSON)")
    src.add_argument("--family", choices=FAMILIES, default=None)
    dp.set_defaults(func=cmd_deficit)

    wp = sub.add_parser("sweep", parents=[common, fam], help="deficits along a one-parameter family")
    wp.add_argument("--family", choices=tuple(SWEEP_PARAM), required=True)
    wp.add_argument("--start", type=float, required=True)
    wp.add_argument("--stop", type=float, required=True)
    wp.add_argument("--steps", type=int, default=10)
    wp.set_defaults(func=cmd_sweep)

    vp = sub.add_parser("verify", parents=[common], help="run the invariant battery")
    vp.add_argument("--n", dest="n_list", default="1,2")
    vp.add_argument("--lambda", dest="lam_list", default="0.5,1,2")
    vp.add_argument("--tol", type=float, default=None, help="uniform bar for every check (default: per-check bars)")
    vp.add_argument("--inject-sign-error", action="store_true", help=argparse.SUPPRESS)
    vp.set_defaults(func=cmd_verify)
    return p


def _check_tol(args):
    if args.command in ("sphere", "deficit", "sweep") and not (args.tol > 0 and math.isfinite(args.tol)):
        raise UsageError(f"--tol must be positive, got {args.tol!r}")
    if getattr(args, "knots", 200) < 3:
        raise UsageError(f"--knots must be >= 3, got {args.knots}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _check_tol(args)
        return args.func(args)
    except UsageError as exc:
        print(f"heisenberg-iso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        for line in exc.diagnostics:
            print(f"heisenberg-iso: invalid profile: {line}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"heisenberg-iso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"heisenberg-iso: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except InvariantError as exc:
        print(f"heisenberg-iso: invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"heisenberg-iso: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
