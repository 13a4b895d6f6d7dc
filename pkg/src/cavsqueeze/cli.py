"""Command-line front end.

Subcommands::

    derive               effective coefficients and the validity audit
    spectrum             output spectra CSV/SVG over a frequency grid
    evolve               intracavity squeeze parameters over a tau grid
    figures <name>       bundled datasets fig2 | fig3 | fig4
    sweep <spec-file>    parameter sweep from a spec file
    verify               full oracle/invariant suite

Exit codes: 0 success, 1 usage or configuration error, 2 verification
failure.  Without ``--config`` the reference working point (unit
couplings, drives 1.5 with 90 degree relative phase, detunings
10/12/11.5/10.5, kappa 0.5) is used.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, load_params
from .evolution import evolution_table
from .oracle import format_report
from .params import ParameterError, check_validity, derive_effective
from .spectra import analyze_spectrum, displacement_report, duan_entangled, squeezing_spectrum
from .sweep import (FIGURE_BASE, load_sweep, run_figure, run_sweep, write_csv,
                    write_spectrum_csv, _annotations)
from . import svg as svgmod

USAGE_ERROR, VERIFY_ERROR = 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cavsqueeze", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version",
                        version=f"cavsqueeze {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid_default=2001):
        p.add_argument("--config", type=Path, default=None,
                       help="parameter file (key = value lines)")
        p.add_argument("--out", type=Path, default=Path("out"),
                       help="output directory (default: ./out)")
        p.add_argument("--grid", type=int, default=grid_default,
                       help="number of grid points")
        p.add_argument("--format", choices=("csv", "svg", "both"),
                       default="csv", dest="fmt")

    common(sub.add_parser("derive", help="effective coefficients + validity"))
    common(sub.add_parser("spectrum", help="output spectra over omega"))
    p_evolve = sub.add_parser("evolve", help="squeeze parameters over tau")
    common(p_evolve, grid_default=201)
    p_evolve.add_argument("--tau-max", type=float, default=None,
                          help="end of the tau grid (default: 2 tau_diss)")
    p_fig = sub.add_parser("figures", help="bundled datasets")
    p_fig.add_argument("name", choices=("fig2", "fig3", "fig4"))
    common(p_fig, grid_default=0)
    p_sweep = sub.add_parser("sweep", help="run a sweep spec file")
    p_sweep.add_argument("spec", type=Path)
    common(p_sweep)
    p_verify = sub.add_parser("verify", help="oracle/invariant suite")
    common(p_verify)
    p_verify.add_argument("--skip-fock", action="store_true",
                          help="skip the slow Fock-cascade checks")
    return parser


def _params(args):
    if args.config is not None:
        return load_params(args.config)
    return FIGURE_BASE


def _cmd_derive(args) -> int:
    params = _params(args)
    eff = derive_effective(params)
    rep = check_validity(params, eff)
    print(format_report([
        ("delta_s1", eff.delta_s1),
        ("delta_s2", eff.delta_s2),
        ("delta_13", eff.delta_13),
        ("delta_24", eff.delta_24),
        ("delta", eff.delta),
        ("lambda1", eff.lambda1),
        ("lambda2", eff.lambda2),
        ("eta", eff.eta),
        ("ratio_first_stage", rep.ratio_first_stage),
        ("ratio_second_stage", rep.ratio_second_stage),
        ("tau_diss", rep.tau_diss),
        ("pass_first", rep.pass_first),
        ("pass_second", rep.pass_second),
    ]))
    return 0


def _cmd_spectrum(args) -> int:
    params = _params(args)
    eff = derive_effective(params)
    grid = np.linspace(-2.0, 2.0, args.grid)
    curve = squeezing_spectrum(params, eff, grid)
    args.out.mkdir(parents=True, exist_ok=True)
    written = []
    if args.fmt in ("csv", "both"):
        written.append(write_spectrum_csv(
            args.out / "spectrum.csv", curve, _annotations(params)))
    if args.fmt in ("svg", "both"):
        svgmod.line_plot(args.out / "spectrum.svg", curve.omega,
                         {"S+": curve.s_plus, "S-": curve.s_minus},
                         title="output squeezing spectrum", ylabel="S")
        written.append(args.out / "spectrum.svg")
    flags, bands = duan_entangled(curve)
    analysis = analyze_spectrum(curve)
    report = args.out / "spectrum_report.txt"
    report.write_text(
        format_report([
            ("peak_term_1", curve.peak_terms[0]),
            ("peak_term_2", curve.peak_terms[1]),
            ("entangled_points", int(np.count_nonzero(flags))),
            ("entanglement_bands", bands),
            ("squeezing_minima", analysis.minima),
            ("squeezing_bandwidth", analysis.bandwidth),
        ]) + "\n" + displacement_report(params, eff) + "\n",
        encoding="utf-8")
    written.append(report)
    for path in written:
        print(path)
    return 0


def _cmd_evolve(args) -> int:
    params = _params(args)
    eff = derive_effective(params)
    tau_diss = check_validity(params, eff).tau_diss
    tau_max = args.tau_max
    if tau_max is None:
        tau_max = 2.0 * tau_diss if math.isfinite(tau_diss) else 5.0
    taus = np.linspace(0.0, tau_max, args.grid)
    table = evolution_table(eff, taus, tau_diss=tau_diss)
    args.out.mkdir(parents=True, exist_ok=True)
    path = write_csv(args.out / "evolve.csv",
                     ["tau", "r", "eps_phase", "within_horizon"], table,
                     _annotations(params, [f"tau_max = {tau_max!r}"]))
    print(path)
    if args.fmt in ("svg", "both"):
        arr = np.array([row[:2] for row in table])
        svgmod.line_plot(args.out / "evolve.svg", arr[:, 0], {"r": arr[:, 1]},
                         title="squeeze magnitude", xlabel="tau (1/g)",
                         ylabel="r")
        print(args.out / "evolve.svg")
    return 0


def _cmd_figures(args) -> int:
    fmt = "both" if args.fmt == "csv" else args.fmt
    for path in run_figure(args.name, args.out, fmt=fmt,
                           grid=args.grid or None):
        print(path)
    return 0


def _cmd_sweep(args) -> int:
    spec = load_sweep(args.spec)
    for path in run_sweep(spec, args.out, fmt=args.fmt):
        print(path)
    return 0


def _cmd_verify(args) -> int:
    from .verify import run_verify
    code, report = run_verify(include_fock=not args.skip_fock)
    print(report)
    return VERIFY_ERROR if code else 0


_COMMANDS = {
    "derive": _cmd_derive,
    "spectrum": _cmd_spectrum,
    "evolve": _cmd_evolve,
    "figures": _cmd_figures,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ParameterError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
