"""Command-line front end: ``casimir-kerr {dce-rate,absorption,verify}``.

Exit codes: 0 success, 1 a verify check failed, 2 bad flags or config file,
3 an intensity match was infeasible.

Settings come from (highest first) command-line flags, then a ``--config``
key=value file.  The output directory additionally honours the
``CASIMIR_KERR_OUT`` environment variable, which sits between the flag and
the config file.
"""

from __future__ import annotations

import argparse
import cmath
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import absorption as ab
from . import dce_rates as dr
from . import io
from . import verify as vf
from .exceptions import InfeasibleTargetError
from .quantum_states import SqueezedCoherentParams, match_intensity

ENV_OUT = "CASIMIR_KERR_OUT"
DEFAULT_OUT = "out"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3
SUMMARY_TAUS = (0.0, 0.5, 1.0)


class UsageError(Exception):
    """Raised for invalid option combinations after parsing."""


def _positive(kind):
    def convert(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value
    return convert


def _nonneg_float(text):
    value = float(text)
    if value < 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be a finite non-negative number, got {text}")
    return value


def _common(p):
    p.add_argument("--config", metavar="FILE", help="key=value file; flags override its entries")
    p.add_argument("--out", metavar="DIR", default=None,
                   help=f"output directory (default: ${ENV_OUT}, config 'out', else ./{DEFAULT_OUT})")
    p.add_argument("--svg", action="store_true", help="also write an SVG line plot")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-kerr",
        description="Photon generation in a vibrating cavity driven by squeezed light, "
                    "and three-photon absorption spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("dce-rate", help="generation rate curves dN/dtau")
    _common(p)
    p.add_argument("--fig", type=int, choices=(1, 2, 3, 4), help="reproduce one of the cavity figures")
    p.add_argument("--zeta", type=_nonneg_float, help="squeezing magnitude |zeta| for a custom curve")
    p.add_argument("--phi", type=float, default=0.0, help="squeezing phase (rad)")
    p.add_argument("--alpha", type=_nonneg_float, help="coherent amplitude magnitude |alpha|")
    p.add_argument("--alpha-phase", type=float, default=0.0, help="coherent amplitude phase (rad)")
    p.add_argument("--target-n", type=_positive(float),
                   help="solve |alpha| so that <n> equals this (instead of --alpha)")
    p.add_argument("--tau-max", type=_positive(float), default=1.0)
    p.add_argument("--samples", type=_positive(int), default=101)

    p = sub.add_parser("absorption", help="three-photon absorption spectra")
    _common(p)
    p.add_argument("--fig", type=int, choices=(5,), help="reproduce the absorption figure")
    p.add_argument("--state", choices=("coherent", "squeezed"), help="single custom spectrum")
    p.add_argument("--alpha2", type=_nonneg_float, help="|alpha|^2 of the field")
    p.add_argument("--alpha-phase", type=float, default=None, help="coherent amplitude phase (rad)")
    p.add_argument("--zeta", type=_nonneg_float, default=0.0, help="squeezing magnitude")
    p.add_argument("--phi", type=float, default=0.0, help="squeezing phase (rad)")
    p.add_argument("--target-n", type=_positive(float), default=None,
                   help="intensity-match the squeezed state to this <n>")
    p.add_argument("--gamma", type=_positive(float), default=ab.GAMMA_DEFAULT, help="decay rate (rad/s)")
    p.add_argument("--omega-lg", type=_positive(float), default=ab.OMEGA_LG_DEFAULT,
                   help="ladder transition frequency (rad/s)")
    p.add_argument("--dipole", type=_positive(float), default=ab.DIPOLE_DEFAULT, help="dipole element (C m)")
    p.add_argument("--span", type=_positive(float), default=10.0, help="half-width of the grid in units of gamma")
    p.add_argument("--points", type=_positive(int), default=2001)

    p = sub.add_parser("verify", help="cross-check every analytic path against its oracle")
    p.add_argument("--config", metavar="FILE", help="key=value file; flags override its entries")
    p.add_argument("--nmax", type=_positive(int), default=vf.VerifyConfig.n_max,
                   help="odd mode truncation for the recursion")
    p.add_argument("--dtau", type=_positive(float), default=vf.VerifyConfig.dtau, help="RK4 step")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH",
                   help="also emit the report as JSON (to PATH, or stdout when omitted)")
    return parser


def _subparser(parser, command):
    for action in parser._subparsers._group_actions:
        return action.choices[command]
    raise KeyError(command)


def _apply_config(parser, argv):
    """Parse twice: config-file entries become defaults, then flags override them.

    Returns ``(args, conf_out)``; the config's ``out`` entry is kept apart so
    the environment variable can rank above it.
    """
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args, None
    conf = io.parse_config_file(args.config)
    sub = _subparser(parser, args.command)
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    conf_out = conf.pop("out", None) if "out" in actions else None
    defaults = {}
    for key, value in conf.items():
        if key not in actions:
            raise io.ConfigError(f"{args.config}: unknown key {key!r} for {args.command}")
        action = actions[key]
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
                raise io.ConfigError(f"{args.config}: {key} expects a boolean, got {value!r}")
            defaults[key] = value.lower() in ("1", "true", "yes", "on")
            continue
        try:
            converted = action.type(value) if action.type else value
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise io.ConfigError(f"{args.config}: bad value for {key}: {exc}") from exc
        if action.choices is not None and converted not in action.choices:
            raise io.ConfigError(f"{args.config}: {key} must be one of {list(action.choices)}")
        defaults[key] = converted
    sub.set_defaults(**defaults)
    return parser.parse_args(argv), conf_out


def _out_dir(args, conf_out=None) -> Path:
    if args.out is not None:
        return Path(args.out)
    env = os.environ.get(ENV_OUT)
    if env:
        return Path(env)
    return Path(conf_out or DEFAULT_OUT)


def _ensure_writable(path: Path):
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create output directory {path}: {exc}") from exc
    if not os.access(path, os.W_OK):
        raise UsageError(f"output directory {path} is not writable")


def _custom_curves(args) -> list[dr.RateCurve]:
    zeta = args.zeta or 0.0
    if args.target_n is not None and args.alpha is not None:
        raise UsageError("give either --alpha or --target-n, not both")
    if args.target_n is not None:
        params = match_intensity(zeta, args.phi, args.alpha_phase, args.target_n)
    else:
        params = SqueezedCoherentParams(cmath.rect(args.alpha or 0.0, args.alpha_phase), zeta, args.phi)
    tau = np.linspace(0.0, args.tau_max, args.samples)
    label = f"custom |alpha|={abs(params.alpha):.6g} |zeta|={zeta:g} phi={params.zeta_phase:.6g}"
    return [dr.RateCurve(params, tau, [dr.rate_squeezed(t, params) for t in tau], label)]


def _summary(curves, out=None):
    out = out or sys.stdout
    tau_curves = [c for c in curves if c.x_name == "tau"]
    if not tau_curves:
        for c in curves:
            print(f"{c.label:<40s} {c.x_name}: {c.x[0]:g}..{c.x[-1]:g}  rate: {c.rate[0]:.6g}..{c.rate[-1]:.6g}",
                  file=out)
        return
    head = f"{'state':<40s}" + "".join(f" {'rate(tau=%g)' % t:>15s}" for t in SUMMARY_TAUS)
    print(head, file=out)
    for c in tau_curves:
        cells = []
        for t in SUMMARY_TAUS:
            cells.append(f" {np.interp(t, c.x, c.rate):>15.6g}" if t <= c.x[-1] else f" {'-':>15s}")
        print(f"{c.label:<40s}" + "".join(cells), file=out)


def cmd_dce_rate(args, conf_out=None) -> int:
    custom = any(v is not None for v in (args.zeta, args.alpha, args.target_n))
    if args.fig is not None and custom:
        raise UsageError("--fig cannot be combined with --zeta/--alpha/--target-n")
    if args.fig is not None:
        cfg = dr.DceFigureConfig(tau_max=args.tau_max, samples=args.samples)
        curves = dr.figure_sweep(args.fig, cfg)
        stem = f"fig{args.fig}"
    else:
        curves = _custom_curves(args)
        stem = "dce"
    out = _out_dir(args, conf_out)
    _ensure_writable(out)
    for c in curves:
        path = io.write_rate_curve_csv(c, out / f"{stem}_{c.slug}.csv")
        print(f"wrote {path}")
    if args.svg:
        series = [(c.label, c.x, c.rate) for c in curves]
        xlabel = "|zeta|" if curves[0].x_name == "zeta" else "tau"
        path = io.write_svg(out / f"{stem}.svg", series, title=f"generation rate ({stem})",
                            xlabel=xlabel, ylabel="dN/dtau")
        print(f"wrote {path}")
    _summary(curves)
    return EXIT_OK


def cmd_absorption(args, conf_out=None) -> int:
    if args.fig is None and args.state is None:
        raise UsageError("give --fig 5 or --state coherent|squeezed")
    if args.fig is not None and args.state is not None:
        raise UsageError("--fig cannot be combined with --state")
    base = dict(gamma=args.gamma, omega_lg=args.omega_lg, dipole=args.dipole,
                span_gammas=args.span, points=args.points)
    if args.fig == 5:
        cfg = ab.Fig5Config(**base) if args.alpha_phase is None else \
            ab.Fig5Config(alpha_phase=args.alpha_phase, **base)
        spectra = ab.figure5_sweep(cfg)
        stem = "fig5"
    else:
        phase = args.alpha_phase or 0.0
        if args.state == "coherent":
            if args.zeta:
                raise UsageError("--zeta requires --state squeezed")
            if args.target_n is not None:
                raise UsageError("--target-n requires --state squeezed; use --alpha2 for coherent")
            params = SqueezedCoherentParams(cmath.rect(math.sqrt(7.0 if args.alpha2 is None else args.alpha2), phase))
            label = f"coherent |alpha|^2={abs(params.alpha) ** 2:.6g}"
        else:
            if args.target_n is not None and args.alpha2 is not None:
                raise UsageError("give either --alpha2 or --target-n, not both")
            if args.alpha2 is not None:
                params = SqueezedCoherentParams(cmath.rect(math.sqrt(args.alpha2), phase), args.zeta, args.phi)
            else:
                params = match_intensity(args.zeta, args.phi, phase, args.target_n or 7.0)
            label = f"squeezed |zeta|={args.zeta:g} |alpha|^2={abs(params.alpha) ** 2:.6g}"
        cfg = ab.Fig5Config(normalize_to=None, **base)
        spectra = ab.figure5_sweep(cfg, states=[(label, params)])
        stem = "absorption"
    out = _out_dir(args, conf_out)
    _ensure_writable(out)
    for s in spectra:
        path = io.write_spectrum_csv(s, out / f"{stem}_{s.slug}.csv", cfg.gamma, cfg.dipole)
        print(f"wrote {path}")
    if args.svg:
        center = ab.AtomicLadder(omega_lg=cfg.omega_lg, gamma=cfg.gamma).resonance
        series = [(s.state_label, (s.omega - center) / cfg.gamma, s.rate_normalized) for s in spectra]
        path = io.write_svg(out / f"{stem}.svg", series, title="three-photon absorption",
                            xlabel="(omega - omega_lg/3) / gamma", ylabel="R / R_max")
        print(f"wrote {path}")
    print(f"{'state':<40s} {'peak omega':>14s} {'peak/R_max':>12s}")
    for s in spectra:
        print(f"{s.state_label:<40s} {s.peak_omega:>14.6e} {s.peak / s.normalization:>12.6g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = vf.VerifyConfig(n_max=args.nmax, dtau=args.dtau)
    print(f"{'check':<38s} {'max_error':>13s} {'tolerance':>9s} status")
    results = vf.run_checks(cfg, progress=lambda r: print(vf.format_line(r), flush=True))
    failed = [r.name for r in results if r.failed]
    print(f"{len(results) - len(failed)} of {len(results)} checks ok" + (f"; FAILED: {', '.join(failed)}" if failed else ""))
    if args.json:
        text = vf.report_json(results, cfg)
        if args.json == "-":
            print(text)
        else:
            Path(args.json).parent.mkdir(parents=True, exist_ok=True)
            Path(args.json).write_text(text + "\n")
            print(f"wrote {args.json}")
    return EXIT_FAIL if failed else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, conf_out = _apply_config(parser, argv)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "dce-rate":
            return cmd_dce_rate(args, conf_out)
        return cmd_absorption(args, conf_out)
    except SystemExit as exc:
        # argparse already printed usage and the message
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except (io.ConfigError, UsageError, ValueError) as exc:
        if isinstance(exc, InfeasibleTargetError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
