"""Command-line front end: ``liouvillian-ep {spectrum,chains,verify,evolve}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .coeff import format_scalar
from .evolve import figure2_dataset
from .jordan import ChainFamily, alternative_chain, build_chain, family_to_text
from .models import CL, HPZ, MKL
from .spectra import all_indices, kl_eigenvalue
from .suites import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _omega_token(text: str) -> complex:
    t = text.strip().replace(" ", "")
    try:
        if t.endswith("i") or t.endswith("j"):
            body = t[:-1]
            return complex(0, float(body) if body not in ("", "+") else 1.0)
        return complex(float(t), 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad frequency {text!r}") from exc


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _grid(text: str) -> List[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be MIN:MAX:STEPS")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc
    if steps < 2 or not hi > lo:
        raise argparse.ArgumentTypeError("grid needs MAX > MIN and STEPS >= 2")
    return [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]


def _num(x: float) -> str:
    return f"{x:.12g}"


# -- spectrum --------------------------------------------------------------

def spectrum_rows(gamma: Fraction, m_max: int, omegas: Sequence[complex]) -> List[tuple]:
    rows = []
    for w in omegas:
        for idx in all_indices(m_max):
            lam = complex(kl_eigenvalue(idx, complex(w), float(gamma)))
            rows.append((w, idx.m, idx.n, "+" if idx.sign > 0 else "-", lam.real, lam.imag))
    return rows


def _omega_text(w: complex) -> str:
    if w.imag == 0:
        return _num(w.real)
    if w.real == 0:
        return _num(w.imag) + "i"
    return f"{_num(w.real)}{w.imag:+.12g}i"


def cmd_spectrum(args) -> str:
    if args.m_max < 0:
        raise UsageError("--m-max must be non-negative")
    rows = spectrum_rows(args.gamma, args.m_max, args.omegas)
    if args.format == "json":
        return json.dumps([{"omega": _omega_text(w), "m": m, "n": n, "sign": s, "re": re, "im": im}
                           for w, m, n, s, re, im in rows], indent=1) + "\n"
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["omega", "m", "n", "sign", "re", "im"])
    for w, m, n, s, re, im in rows:
        wr.writerow([_omega_text(w), m, n, s, _num(re + 0.0), _num(im + 0.0)])
    return buf.getvalue()


# -- chains ----------------------------------------------------------------

def _chain_model(args):
    name = args.model.lower()
    if name == "cl":
        return CL.at_ep(args.omega0)
    if name == "mkl":
        return MKL(args.omega0, args.gamma, 2 * args.omega0)
    if name == "hpz":
        return HPZ.at_ep(args.b_plus, args.b_minus, args.omega0)
    raise UsageError(f"unknown model {args.model!r}")


def chain_families(args) -> List[ChainFamily]:
    model = _chain_model(args)
    if args.variant == "primary":
        return [build_chain(model, N) for N in range(args.n_max + 1)]
    if isinstance(model, HPZ):
        raise UsageError("the alternative series is defined for CL and mKL only")
    return [alternative_chain(model, N) for N in range(args.n_max + 1)]


def cmd_chains(args) -> str:
    if args.n_max < 0:
        raise UsageError("--n-max must be non-negative")
    fams = chain_families(args)
    if args.format == "text":
        return family_to_text(fams)
    if args.format == "json":
        data = {str(f.N): {str(z): {f"{a},{b}": format_scalar(c) for (a, b), c in p}
                           for z, p in enumerate(f.polys)} for f in fams}
        return json.dumps({"model": args.model, "variant": args.variant, "lambda": {
            str(f.N): format_scalar(f.lambda_n) for f in fams}, "chains": data}, indent=1, sort_keys=True) + "\n"
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["N", "z", "degQ", "degS", "coeff"])
    for f in fams:
        for z, p in enumerate(f.polys):
            for (a, b), c in p:
                wr.writerow([f.N, z, a, b, format_scalar(c)])
    return buf.getvalue()


# -- verify ----------------------------------------------------------------

def cmd_verify(args) -> tuple:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    lines, ok = [], True
    for name in names:
        rep = SUITES[name](args.n_max, fault=args.inject_fault)
        ok = ok and rep.ok
        lines.extend(rep.lines())
    lines.append("ALL PASS" if ok else "VERIFICATION FAILED")
    return "\n".join(lines) + "\n", ok


# -- evolve ----------------------------------------------------------------

def cmd_evolve(args) -> str:
    rows = figure2_dataset(args.times, args.grid, args.omega0)
    if args.format == "json":
        return json.dumps([{"regime": r, "t": t, "axis": ax, "coord": x, "value": v}
                           for r, t, ax, x, v in rows], indent=1) + "\n"
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["regime", "t", "axis", "coord", "value"])
    for r, t, ax, x, v in rows:
        wr.writerow([r, _num(t), ax, _num(x), _num(v + 0.0)])
    return buf.getvalue()


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liouvillian-ep",
                                description="Exceptional-point structure of damped-oscillator Liouvillians.")
    p.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="KL eigenvalues over a frequency sweep")
    sp.add_argument("--gamma", type=_fraction, default=Fraction(1))
    sp.add_argument("--b", type=_fraction, default=Fraction(1, 2), help="thermal parameter (eigenvalues do not depend on it)")
    sp.add_argument("--m-max", type=int, default=2)
    sp.add_argument("--omegas", type=lambda s: [_omega_token(x) for x in s.split(",")],
                    default=[1, 0.5, 0, 0.5j], help="comma list; imaginary values as 0.5i")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    ch = sub.add_parser("chains", help="Jordan chains at the exceptional point")
    ch.add_argument("--model", choices=("CL", "mKL", "HPZ"), default="CL")
    ch.add_argument("--n-max", type=int, default=3)
    ch.add_argument("--variant", choices=("primary", "alternative"), default="primary")
    ch.add_argument("--omega0", type=_fraction, default=Fraction(1))
    ch.add_argument("--gamma", type=_fraction, default=Fraction(2), help="mKL damping; omega~ = 2 omega0/gamma")
    ch.add_argument("--b-plus", type=_fraction, default=Fraction(1))
    ch.add_argument("--b-minus", type=_fraction, default=Fraction(1, 2))
    ch.add_argument("--format", choices=("text", "json", "csv"), default="text")

    ve = sub.add_parser("verify", help="run the exact verification suites")
    ve.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    ve.add_argument("--n-max", type=int, default=6)
    ve.add_argument("--inject-fault", action="store_true",
                    help="perturb one chain member to exercise the failure path")

    ev = sub.add_parser("evolve", help="three-regime relaxation slices")
    ev.add_argument("--times", type=_float_list, default=[0.0, 0.5, 1.0, 3.0], help="omega0 t values")
    ev.add_argument("--grid", type=_grid, default=_grid("-4:4:161"), help="MIN:MAX:STEPS")
    ev.add_argument("--omega0", type=_fraction, default=Fraction(1))
    ev.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


# values that may legitimately start with "-" (e.g. "--grid -4:4:161")
_DASH_VALUED = ("--grid", "--omegas", "--times")


def _join_dash_values(argv: Sequence[str]) -> List[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUED and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _join_dash_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    status = EXIT_OK
    try:
        if args.command == "spectrum":
            text = cmd_spectrum(args)
        elif args.command == "chains":
            text = cmd_chains(args)
        elif args.command == "verify":
            if args.n_max < 0:
                raise UsageError("--n-max must be non-negative")
            text, ok = cmd_verify(args)
            status = EXIT_OK if ok else EXIT_FAIL
        else:
            text = cmd_evolve(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
