"""Command-line frontend: sweeps over n and tau (or a phase-space grid),
written as CSV or JSON artifacts.

Every output file starts with comment lines recording the full run
configuration, so a data file is reproducible from its own header.  Data go
to the file, progress goes to stderr.  Exit codes: 0 success, 2 bad
configuration, 3 quadrature non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .analysis import (build_phase_curve, default_scaled_window,
                       estimate_plateau, fit_delta_phi_slope,
                       steps_for_unwrap)
from .asymptotics import (NNLO_PHASE_SLOPE, fga_abs2_limit, fga_closed_form,
                          hk_spectrum_lo, hk_spectrum_no_theta)
from .errors import HkboseError, NonConvergence
from .model import ModelParams, exact_energy
from .propagator import g_n, g_n_fga, g_n_no_theta
from .quadrature import PrecisionConfig, choose_working_digits
from .wigner import GridSpec, render_field

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3

DIGITS_ENV = "HKBOSE_DIGITS"


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--n expects a comma list of integers: {exc}")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("--n expects nonnegative integers")
    return values


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--zi expects complex like '2+0j': {exc}")


def _parse_grid(text: str) -> GridSpec:
    try:
        lo, hi, step = (float(p) for p in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--grid expects 'min:max:step': {exc}")
    if not (hi > lo and step > 0):
        raise argparse.ArgumentTypeError("--grid requires max > min and step > 0")
    return GridSpec(re_min=lo, re_max=hi, im_min=lo, im_max=hi, step=step)


def _parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--window expects 'lo:hi': {exc}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hkbose",
        description="Semiclassical (Herman-Kluk) propagator data for the "
                    "single-site Bose-Hubbard model.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=_parse_n_list, required=True,
                           help="comma list of occupation numbers")
        p.add_argument("--omega", type=float, default=1.0,
                       help="harmonic frequency omega_e")
        p.add_argument("--U", type=float, default=0.05, help="interaction U")
        p.add_argument("--digits", type=int, default=None,
                       help="working decimal digits (default: per-n policy; "
                            f"env {DIGITS_ENV} overrides)")
        p.add_argument("--rel-tol", type=float, default=1e-8)
        p.add_argument("--abs-tol", type=float, default=1e-13)
        p.add_argument("--max-subdiv", type=int, default=20000)
        p.add_argument("--out", required=True, help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("gn", help="raw g_n samples on a tau grid")
    add_common(p)
    p.add_argument("--tau-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--method", default="hk",
                   choices=("hk", "fga", "fga0", "hk0"),
                   help="radial-integral variant")

    p = sub.add_parser("norm", help="|g_n|^2 decay/plateau curves")
    add_common(p)
    p.add_argument("--tau-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=200)

    p = sub.add_parser("phase", help="unwrapped phase and residue curves "
                                     "with fitted slopes")
    add_common(p)
    p.add_argument("--tau-max", type=float, default=None,
                   help="default: scaled window 10/n per n")
    p.add_argument("--steps", type=int, default=None,
                   help="default: sized from the phase rate")
    p.add_argument("--window", type=_parse_window, default=None,
                   help="fit window lo:hi in tau (default: scaled 2..10 in n*tau)")

    p = sub.add_parser("spectrum", help="spectra and their semiclassical errors")
    add_common(p)

    p = sub.add_parser("fga-compare", help="HK vs FGA unitarity decay")
    add_common(p)
    p.add_argument("--tau-max", type=float, default=None,
                   help="default: 5/n per n (scaled variable)")
    p.add_argument("--steps", type=int, default=60)

    p = sub.add_parser("wigner", help="Wigner fields on a phase-space grid")
    add_common(p, need_n=False)
    p.add_argument("--zi", type=_parse_complex, default=2 + 0j,
                   help="initial coherent label, e.g. '2+0j'")
    p.add_argument("--t", type=float, required=True, help="evolution time")
    p.add_argument("--grid", type=_parse_grid, default=GridSpec(),
                   help="square grid 'min:max:step' (default -4:4:0.05)")
    p.add_argument("--method", default="exact,hk,twa",
                   help="comma subset of exact,hk,twa")
    p.add_argument("--seed", type=int, default=None,
                   help="accepted for interface symmetry; wigner uses none")
    return parser


def _precision_for(n: int, args) -> PrecisionConfig:
    digits = args.digits
    env = os.environ.get(DIGITS_ENV)
    if digits is None and env is not None:
        digits = int(env)
    if digits is None:
        digits = choose_working_digits(n, getattr(args, "tau_max", 1.0) or 1.0, 8)
    digits = max(digits, int(-math.log10(args.rel_tol) + 10))
    return PrecisionConfig(working_digits=digits, rel_tol=args.rel_tol,
                           abs_tol=args.abs_tol,
                           max_subdivisions=args.max_subdiv)


def _config_header(args) -> list[str]:
    skip = {"out", "format"}
    items = {k: v for k, v in sorted(vars(args).items())
             if k not in skip and not k.startswith("_")}
    rendered = {k: (str(v) if isinstance(v, (GridSpec, tuple)) else v)
                for k, v in items.items()}
    return [f"# hkbose {args.command}",
            f"# config: {json.dumps(rendered, default=str)}"]


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, columns: list[str], rows: list[list], extra_comments=()):
    head = _config_header(args)
    if args.format == "csv":
        lines = head + list(extra_comments)
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(
                "" if v is None
                else repr(float(v)) if isinstance(v, float)
                else str(v) for v in row))
        _atomic_write(args.out, "\n".join(lines) + "\n")
    else:
        payload = {
            "command": args.command,
            "config": {k: str(v) for k, v in vars(args).items() if k != "out"},
            "columns": columns,
            "rows": [[None if v is None else v for v in row] for row in rows],
            "comments": list(extra_comments),
        }
        _atomic_write(args.out, json.dumps(payload, indent=1, default=str) + "\n")
    print(f"wrote {args.out} ({len(rows)} rows)", file=sys.stderr)


def _tau_grid(tau_max: float, steps: int) -> list[float]:
    return [tau_max * (i / steps) for i in range(steps + 1)]


def cmd_gn(args) -> int:
    sample = {
        "hk": g_n,
        "fga": lambda n, tau, cfg: g_n_fga(n, tau, cfg, keep_theta=True),
        "fga0": lambda n, tau, cfg: g_n_fga(n, tau, cfg, keep_theta=False),
        "hk0": g_n_no_theta,
    }[args.method]
    rows = []
    for n in args.n:
        cfg = _precision_for(n, args)
        print(f"g_{n}: sweeping {args.steps + 1} tau points", file=sys.stderr)
        for tau in _tau_grid(args.tau_max, args.steps):
            res = sample(n, tau, cfg)
            rows.append([n, tau, res.value.real, res.value.imag,
                         abs(res.value) ** 2, res.error_estimate])
    _emit(args, ["n", "tau", "re", "im", "abs2", "error_estimate"], rows)
    return EXIT_OK


def cmd_norm(args) -> int:
    rows = []
    for n in args.n:
        cfg = _precision_for(n, args)
        print(f"norm curve n={n}", file=sys.stderr)
        for tau in _tau_grid(args.tau_max, args.steps):
            res = g_n(n, tau, cfg)
            rows.append([n, tau, abs(res.value) ** 2])
    _emit(args, ["n", "tau", "abs2"], rows)
    return EXIT_OK


def cmd_phase(args) -> int:
    rows = []
    comments = []
    for n in args.n:
        if n < 1:
            print("phase curves need n >= 1; skipping n=0", file=sys.stderr)
            continue
        cfg = _precision_for(n, args)
        tau_max = args.tau_max if args.tau_max is not None else 10.0 / n
        steps = args.steps if args.steps is not None else steps_for_unwrap(n, tau_max)
        window = args.window if args.window is not None \
            else default_scaled_window(n, 2.0, 10.0)
        print(f"phase curve n={n}: {steps + 1} points to tau={tau_max:g}",
              file=sys.stderr)
        curve = build_phase_curve(n, tau_max, steps, cfg)
        for tau, phi, dphi, mod2 in zip(curve.tau_grid, curve.phase,
                                        curve.delta_phi, curve.modulus_sq):
            rows.append([n, float(tau), float(phi), float(dphi), float(mod2)])
        slope, stderr = fit_delta_phi_slope(curve, window)
        comments.append(f"# slope n={n}: {slope:.6f} +- {stderr:.6f} "
                        f"(window tau in [{window[0]:g}, {window[1]:g}], "
                        f"reference {NNLO_PHASE_SLOPE})")
        print(comments[-1][2:], file=sys.stderr)
    _emit(args, ["n", "tau", "phase", "delta_phi", "abs2"], rows,
          extra_comments=comments)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    params = ModelParams(omega_e=args.omega, interaction=args.U)
    rows = []
    for n in args.n:
        fga_rate = (n - 0.5) * args.omega + 0.5 * args.U * n * (n - 2)
        rows.append([
            n,
            exact_energy(params, n),
            hk_spectrum_lo(params, n),
            hk_spectrum_no_theta(params, n),
            fga_rate,
            NNLO_PHASE_SLOPE * args.U,
        ])
    _emit(args, ["n", "e_exact", "e_hk_lo", "e_hk_no_theta",
                 "e_fga_rate", "nnlo_offset"], rows)
    return EXIT_OK


def cmd_fga_compare(args) -> int:
    rows = []
    for n in args.n:
        cfg = _precision_for(n, args)
        tau_max = args.tau_max if args.tau_max is not None else 5.0 / max(n, 1)
        print(f"fga-compare n={n} to tau={tau_max:g}", file=sys.stderr)
        for tau in _tau_grid(tau_max, args.steps):
            hk = g_n(n, tau, cfg)
            fga = g_n_fga(n, tau, cfg)
            rows.append([n, tau, abs(hk.value) ** 2, abs(fga.value) ** 2,
                         fga_abs2_limit(n, 1.0, tau)])
    _emit(args, ["n", "tau", "hk_abs2", "fga_abs2", "fga_analytic"], rows)
    return EXIT_OK


def cmd_wigner(args) -> int:
    params = ModelParams(omega_e=args.omega, interaction=args.U)
    methods = tuple(m.strip() for m in args.method.split(",") if m.strip())
    for m in methods:
        if m not in ("exact", "hk", "twa"):
            print(f"unknown wigner method '{m}'", file=sys.stderr)
            return EXIT_CONFIG
    cfg = _precision_for(0, args)
    print(f"rendering {'/'.join(methods)} on "
          f"[{args.grid.re_min},{args.grid.re_max}]^2 step {args.grid.step}",
          file=sys.stderr)
    fld = render_field(args.zi, params, args.t, args.grid, methods, cfg)

    col_order = ("exact", "hk", "twa")
    rows = []
    for i, re in enumerate(fld.alpha_re):
        for j, im in enumerate(fld.alpha_im):
            row = [float(re), float(im)]
            for m in col_order:
                row.append(float(fld.values[m][i, j]) if m in fld.values else None)
            rows.append(row)
    comments = [f"# normalization {m}: {v:.6f}"
                for m, v in fld.normalization.items()]
    _emit(args, ["re_alpha", "im_alpha", "w_exact", "w_hk", "w_twa"], rows,
          extra_comments=comments)
    return EXIT_OK


_COMMANDS = {
    "gn": cmd_gn,
    "norm": cmd_norm,
    "phase": cmd_phase,
    "spectrum": cmd_spectrum,
    "fga-compare": cmd_fga_compare,
    "wigner": cmd_wigner,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NonConvergence as exc:
        print(f"quadrature failed to converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (HkboseError, ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
