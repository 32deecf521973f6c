"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 numerical
non-convergence, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .bessel import Family, FamilyParams, evaluate
from .catalogue import load_catalogue
from .errors import DomainError, NotConverged, ParseError, UnibesselError
from .identities import TABLE_ROWS, IdentityId, check_identity, relative_residual, table_row
from .window import FilterSpec, WindowSpec, fir_lowpass, freq_response, kaiser_general

EXIT_OK, EXIT_USAGE, EXIT_NOT_CONVERGED, EXIT_VERIFY_FAILED = 0, 1, 2, 3
TABLE_TOL = 1e-8
PLOT_SAMPLES = 400
PLOT_X_MAX = 40.0
TOL_ENV = "UNIBESSEL_TOL"

_FAMILY_ALIASES = {
    "G": Family.UnifiedG, "UnifiedG": Family.UnifiedG,
    "J": Family.GenBesselJ, "GenBesselJ": Family.GenBesselJ,
    "I": Family.GenModifiedI, "GenModifiedI": Family.GenModifiedI,
    "g": Family.SphericalG, "SphericalG": Family.SphericalG,
    "C": Family.CliffordC, "CliffordC": Family.CliffordC,
}


class UsageError(UnibesselError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """17 significant digits; empty for missing values."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.17g}"


def _write_csv(rows: list[list], header: list[str], path: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    _emit(buf.getvalue(), path)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _env_tolerance() -> float | None:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise UsageError(f"{TOL_ENV} must be > 0")
    return tol


# ---------------------------------------------------------------------------
# eval

def _family_params(args) -> FamilyParams:
    try:
        family = _FAMILY_ALIASES[args.family]
    except KeyError:
        raise UsageError(f"unknown family {args.family!r}") from None
    b = args.b
    if b is None and family in (Family.UnifiedG, Family.SphericalG, Family.CliffordC):
        b = 1.0
    return FamilyParams(family, b, args.c, args.nu, args.rho)


def cmd_eval(args) -> int:
    params = _family_params(args)
    try:
        sv = evaluate(params, args.z, args.rel_tol, args.derivative)
        status = EXIT_OK
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        sv = exc.partial
        status = EXIT_NOT_CONVERGED
    record = {
        "family": params.family.value, "b": params.b, "c": params.c, "nu": params.nu,
        "rho": params.rho, "z": args.z, "derivative": args.derivative,
        "value": sv.value if sv is not None else None,
        "terms_used": sv.terms_used if sv is not None else 0,
        "tail_estimate": sv.tail_estimate if sv is not None else None,
        "converged": status == EXIT_OK,
    }
    if args.format == "json":
        _emit(json.dumps(record, indent=2) + "\n", args.output)
    else:
        keys = list(record)
        _write_csv([[record[k] if not isinstance(record[k], bool) else str(record[k]).lower()
                     for k in keys]], keys, args.output)
    return status


# ---------------------------------------------------------------------------
# verify

def _jitter(points, rng: random.Random, count: int):
    """Extra points: copies of the catalogue points with z scaled by a random
    factor in [0.9, 1.1]."""
    out = [dict(p) for p in points]
    for _ in range(count):
        base = dict(rng.choice(points))
        if "z" in base:
            base["z"] = base["z"] * rng.uniform(0.9, 1.1)
        out.append(base)
    return out


def cmd_verify(args) -> int:
    entries = load_catalogue(args.catalogue)
    if args.only:
        wanted = []
        for item in args.only:
            wanted.extend(s for s in item.split(",") if s.strip())
        ids = {IdentityId.parse(s) for s in wanted}
        entries = [e for e in entries if e.id in ids]
        missing = ids - {e.id for e in entries}
        if missing:
            raise UsageError("catalogue has no entry for " + ", ".join(sorted(m.value for m in missing)))
    override = args.tolerance if args.tolerance is not None else _env_tolerance()
    rng = random.Random(args.seed)
    reports, failed, errors = [], [], []
    for entry in entries:
        tol = override if override is not None else entry.tolerance
        points = _jitter(entry.samples, rng, args.random_points)
        try:
            rep = check_identity(entry.id, points, tol)
            reports.append(rep.to_dict())
            if not rep.passed:
                failed.append(entry.id.value)
                print(f"FAIL {entry.id.value}: max residual {rep.max_relative_residual:.3e} "
                      f"> {tol:g}", file=sys.stderr)
        except (NotConverged, DomainError) as exc:
            errors.append(entry.id.value)
            reports.append({"id": entry.id.value, "passed": False, "tolerance": tol,
                            "error": f"{type(exc).__name__}: {exc}"})
            print(f"ERROR {entry.id.value}: {exc}", file=sys.stderr)
    payload = {"seed": args.seed, "reports": reports} if args.with_seed else reports
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    if failed or errors:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# table

_ROW_SUBSTITUTION = {
    "I": "b=-1 c=1/2 order=nu+1/2 rho=0", "II": "b=1 c=1/2 order=nu+1/2 rho=0",
    "III": "b=-1 c=1 order=nu+1/2 rho=0", "IV": "b=1 c=1 order=nu+1/2 rho=0",
    "V": "b=-1 c=3/2 order=nu-1/2 rho=0", "VI": "b=1 c=3/2 order=nu-1/2 rho=0",
    "VII": "b=-1 c=1 order=nu-1/2 rho=0", "VIII": "b=1 c=1 order=nu-1/2 rho=0",
    "IX": "b=-1 c=1 order=0 rho=0", "X": "b=1 c=1 order=0 rho=0",
    "XI": "b=1 c=1 order=1/2 rho=0", "XII": "b=1 c=1 order=-1/2 rho=0",
    "XIII": "b=1 c=1 order=nu rho=0", "XIV": "b=-1 c=1 order=nu rho=0",
}
TABLE_Z = (0.0, 0.5, 1.0, math.pi / 2, 2.0, 5.0)


def cmd_table(args) -> int:
    tol = args.tolerance if args.tolerance is not None else (_env_tolerance() or TABLE_TOL)
    rows, bad, unconverged = [], [], False
    for row in TABLE_ROWS:
        for z in TABLE_Z:
            try:
                params, left, right = table_row(row, args.nu, z)
            except DomainError:
                continue  # z = 0 for rows with a negative power of z
            except NotConverged:
                rows.append([row, _ROW_SUBSTITUTION[row], args.nu, z, None, None, None])
                unconverged = True
                continue
            res = relative_residual(left, right)
            rows.append([row, _ROW_SUBSTITUTION[row], float(args.nu), float(z), left, right, res])
            if res > tol:
                bad.append(row)
    header = ["row", "parameters", "nu", "z", "left", "right", "relative_residual"]
    _write_csv(rows, header, args.output)
    if bad:
        print("rows above tolerance: " + ", ".join(sorted(set(bad))), file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_NOT_CONVERGED if unconverged else EXIT_OK


# ---------------------------------------------------------------------------
# plotdata

def figure_definitions() -> list[tuple[int, FamilyParams, str]]:
    """(figure number, parameters, caption) for the 18 curves."""
    figs = []
    number = 1
    for nu in (0.0, 0.5, 1.5):
        for c in (1.0, 2.0, 3.0):
            figs.append((number, FamilyParams.bessel_j(c, nu), f"J_{nu:g}^({c:g})(x)"))
            number += 1
    for nu in (0.0, 0.5, 1.5):
        for c in (1.5, 2.5, 3.5):
            figs.append((number, FamilyParams.spherical(1.0, c, nu), f"g_{nu:g}^({c:g})(x)"))
            number += 1
    return figs


def figure_grid(params: FamilyParams, samples: int = PLOT_SAMPLES) -> np.ndarray:
    # the spherical family is sampled from x = 0.01 (its argument must be > 0)
    start = 0.01 if params.family == Family.SphericalG else 0.0
    return np.linspace(start, PLOT_X_MAX, samples)


def cmd_plotdata(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    missing = 0
    names = []
    for number, params, caption in figure_definitions():
        rows = []
        for x in figure_grid(params, args.samples):
            try:
                y = evaluate(params, float(x)).value
            except NotConverged:
                y = None
                missing += 1
            rows.append([float(x), y])
        name = f"figure-{number:02d}.csv"
        names.append((name, caption))
        _write_csv(rows, ["x", "y"], str(outdir / name))
    if args.script:
        lines = ["set datafile separator ','", "set key autotitle columnhead",
                 "set terminal pngcairo size 640,480"]
        for name, caption in names:
            stem = name[:-4]
            lines += [f"set output '{stem}.png'", f"set title '{caption}'",
                      f"plot '{name}' using 1:2 with lines title '{caption}'"]
        (outdir / "plot.gp").write_text("\n".join(lines) + "\n", encoding="utf-8")
    if missing:
        print(f"{missing} samples did not converge (left empty)", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


# ---------------------------------------------------------------------------
# window

def cmd_window(args) -> int:
    spec = WindowSpec(args.N, args.alpha, args.c, args.rho)
    win = kaiser_general(spec)
    outdir = Path(args.outdir) if args.outdir else None
    if outdir is None and (args.design_lowpass is not None or args.response is not None):
        outdir = Path(".")
    win_path = str(outdir / "window.csv") if outdir else args.output
    _write_csv([[w] for w in win.coefficients], ["w"], win_path)
    filt = None
    if args.design_lowpass is not None:
        filt = fir_lowpass(spec.N, args.design_lowpass, win)
        _write_csv([[t] for t in filt.taps], ["tap"], str(outdir / "taps.csv"))
    if args.response is not None:
        if filt is None:
            total = math.fsum(win.coefficients)
            filt = FilterSpec(tuple(w / total for w in win.coefficients), 0.0)
        resp = freq_response(filt, args.response)
        _write_csv([[f, d] for f, d in resp], ["frequency", "magnitude_db"],
                   str(outdir / "response.csv"))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unibessel", description="Unified four-parameter Bessel functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a family member at one point")
    p.add_argument("--family", default="G", help="G, J, I, g (spherical) or C (Bessel-Clifford)")
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--c", "--lambda", dest="c", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--derivative", type=int, default=0, choices=range(0, 5))
    p.add_argument("--rel-tol", type=float, default=1e-13)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run the identity checks")
    p.add_argument("--only", action="append", default=[], help="identity id (repeatable or comma list)")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-points", type=int, default=0,
                   help="extra jittered sample points per identity")
    p.add_argument("--catalogue", default=None)
    p.add_argument("--with-seed", action="store_true", help="wrap the report with the seed")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="special-case table with closed-form comparison")
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("plotdata", help="write the 18 figure curves as CSV")
    p.add_argument("--outdir", default="plotdata")
    p.add_argument("--samples", type=int, default=PLOT_SAMPLES)
    p.add_argument("--script", action="store_true", help="also write a gnuplot script")
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("window", help="generalized Kaiser window and lowpass design")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--design-lowpass", type=float, default=None, metavar="CUTOFF")
    p.add_argument("--response", type=int, default=None, metavar="NPOINTS")
    p.add_argument("--outdir", default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_window)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
