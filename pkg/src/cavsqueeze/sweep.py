"""Parameter sweeps and the bundled figure datasets.

Sweeps are driven by a plain-text spec file (same key=value format as
the parameter files) naming one sweep axis, its range, and which output
files to produce.  All evaluation is pure, so identical spec files give
byte-identical CSVs.

The three bundled datasets reproduce the published working points:

``fig2``  S+ surface over omega and kappa at the reference drive point;
``fig3``  S+ spectra at kappa = 0.05, 0.5 and 2;
``fig4``  N1 intensity noise at the stronger drive point, with the
          coherent peak weights for mu1 = mu2 = 0.8.

The kappa range of the surface is not pinned by the source material;
(0.05 .. 2] in 40 steps covers every slice used elsewhere and is
recorded in the dataset header.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__, svg
from .config import ConfigError, PARAM_KEYS, params_from_pairs, parse_pairs
from .evolution import evolution_table
from .oracle import max_relative_deviation, spectrum_matrix_oracle
from .params import SystemParams, check_validity, derive_effective
from .spectra import (SpectrumCurve, analyze_spectrum, default_omega_grid,
                      displacement_report, squeezing_spectrum)

AXES = ("omega", "kappa", "tau", "omega_x_kappa")
OUTPUTS = ("spectrum", "intensity", "squeeze", "validity", "oracle")
DEFAULT_OUTPUTS = {
    "omega": ("spectrum", "validity"),
    "kappa": ("spectrum", "validity"),
    "tau": ("squeeze", "validity"),
    "omega_x_kappa": ("spectrum", "validity"),
}

# reference working point: unit couplings, asymmetric detunings, drive
# pair at 1.5 with a 90 degree relative phase
FIGURE_BASE = SystemParams(
    g1=1.0, g2=1.0, omega3=1.5j, omega4=1.5,
    delta1=10.0, delta2=12.0, delta3=11.5, delta4=10.5,
    kappa1=0.5, kappa2=0.5)

FIG3_KAPPAS = (0.05, 0.5, 2.0)
FIG2_KAPPA_COUNT = 40
FIG2_OMEGA_COUNT = 401
FIG4_DRIVE = dict(omega3=2.5j, omega4=2.5, kappa1=0.1, kappa2=0.1,
                  mu1=0.8, mu2=0.8)


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    ranges: dict
    base: SystemParams
    outputs: tuple
    omega_fixed: float = 0.0

    def grid(self, name: str) -> np.ndarray:
        start, stop, count = self.ranges[name]
        return np.linspace(start, stop, count)


_RANGE_KEYS = tuple(f"{ax}_{part}" for ax in ("omega", "kappa", "tau")
                    for part in ("start", "stop", "count"))
_SWEEP_KEYS = PARAM_KEYS + _RANGE_KEYS + ("axis", "outputs", "omega_fixed")


def parse_sweep_text(text: str) -> SweepSpec:
    """Parse a sweep spec.  Key=value lines; ``axis`` and the matching
    ``<axis>_start/stop/count`` keys are required, plus the base
    parameters.  ``outputs`` is a comma list inside the value."""
    # outputs value is a word list, so patch it through the numeric parser
    outputs: list[str] = []
    axis = None
    kept_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped.startswith("outputs"):
            _, _, value = stripped.partition("=")
            outputs = [tok.strip() for tok in value.split(",") if tok.strip()]
            for token in outputs:
                if token not in OUTPUTS:
                    raise ConfigError(f"unknown output {token!r}", lineno)
            kept_lines.append("")
            continue
        if stripped.startswith("axis"):
            _, _, value = stripped.partition("=")
            axis = value.strip()
            if axis not in AXES:
                raise ConfigError(f"unknown axis {axis!r}", lineno)
            kept_lines.append("")
            continue
        kept_lines.append(raw)
    if axis is None:
        raise ConfigError("sweep spec must set an axis")
    pairs = parse_pairs("\n".join(kept_lines), _SWEEP_KEYS)

    needed = ("omega", "kappa") if axis == "omega_x_kappa" else (axis,)
    ranges = {}
    for name in needed:
        try:
            start = pairs.pop(f"{name}_start").real
            stop = pairs.pop(f"{name}_stop").real
            count = int(pairs.pop(f"{name}_count").real)
        except KeyError as exc:
            raise ConfigError(
                f"axis {axis!r} needs {name}_start/{name}_stop/{name}_count"
            ) from None
        if count < 2:
            raise ConfigError(f"{name}_count must be >= 2, got {count}")
        if not start < stop:
            raise ConfigError(f"{name}_start must be < {name}_stop")
        ranges[name] = (start, stop, count)
    omega_fixed = pairs.pop("omega_fixed", 0j).real
    for leftover in _RANGE_KEYS:
        if leftover in pairs:
            raise ConfigError(f"{leftover} does not belong to axis {axis!r}")
    base = params_from_pairs(pairs)
    return SweepSpec(axis=axis, ranges=ranges, base=base,
                     outputs=tuple(outputs) or DEFAULT_OUTPUTS[axis],
                     omega_fixed=omega_fixed)


def load_sweep(path) -> SweepSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_sweep_text(fh.read())


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _annotations(params: SystemParams, extra=()) -> list[str]:
    eff = derive_effective(params)
    rep = check_validity(params, eff)
    lines = [f"cavsqueeze {__version__}"]
    lines.extend(extra)
    for key in PARAM_KEYS:
        lines.append(f"{key} = {getattr(params, key)}")
    lines.append(f"lambda1 = {eff.lambda1!r}")
    lines.append(f"lambda2 = {eff.lambda2!r}")
    lines.append(f"eta = {eff.eta!r}")
    lines.append(f"validity_ratio_first = {rep.ratio_first_stage!r}")
    lines.append(f"validity_ratio_second = {rep.ratio_second_stage!r}")
    lines.append(f"validity_pass_first = {_fmt(rep.pass_first)}")
    lines.append(f"validity_pass_second = {_fmt(rep.pass_second)}")
    lines.append(f"tau_diss = {rep.tau_diss!r}")
    return lines


def write_csv(path, columns: list[str], rows, annotations=()) -> Path:
    path = Path(path)
    lines = [f"# {a}" for a in annotations]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_spectrum_csv(path, curve: SpectrumCurve, annotations=()) -> Path:
    rows = zip(curve.omega, curve.s_plus, curve.s_minus, curve.n1, curve.n2,
               curve.entangled)
    notes = list(annotations)
    notes.append(f"peak_term_1 = {curve.peak_terms[0]!r}")
    notes.append(f"peak_term_2 = {curve.peak_terms[1]!r}")
    return write_csv(path, ["omega", "s_plus", "s_minus", "n1", "n2",
                            "entangled"], rows, notes)


def _spectrum_svg(path, curve: SpectrumCurve, title: str) -> None:
    svg.line_plot(path, curve.omega,
                  {"S+": curve.s_plus, "S-": curve.s_minus},
                  title=title, ylabel="squeezing spectrum")


def run_sweep(spec: SweepSpec, out_dir, fmt: str = "csv") -> list[Path]:
    """Evaluate a sweep spec and write its output files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    base = spec.base
    eff = derive_effective(base)
    want_svg = fmt in ("svg", "both")
    want_csv = fmt in ("csv", "both")

    def emit(name, columns, rows, annotations):
        if want_csv:
            written.append(write_csv(out / name, columns, rows, annotations))

    if spec.axis == "omega":
        grid = spec.grid("omega")
        curve = squeezing_spectrum(base, eff, grid)
        notes = _annotations(base, [f"axis = omega"])
        if "oracle" in spec.outputs:
            oc = spectrum_matrix_oracle(base, eff, grid)
            notes.append(
                f"oracle_max_rel_dev = "
                f"{max_relative_deviation(curve.s_plus, oc.s_plus)!r}")
        if "spectrum" in spec.outputs and want_csv:
            written.append(write_spectrum_csv(out / "sweep_spectrum.csv",
                                              curve, notes))
        if "intensity" in spec.outputs:
            emit("sweep_intensity.csv", ["omega", "n1", "n2"],
                 zip(curve.omega, curve.n1, curve.n2), notes)
        if want_svg:
            _spectrum_svg(out / "sweep_spectrum.svg", curve, "omega sweep")
            written.append(out / "sweep_spectrum.svg")
    elif spec.axis == "kappa":
        rows = []
        for kappa in spec.grid("kappa"):
            p = replace(base, kappa1=float(kappa), kappa2=float(kappa))
            curve = squeezing_spectrum(p, eff)
            analysis = analyze_spectrum(curve)
            at_fixed = float(np.interp(spec.omega_fixed, curve.omega,
                                       curve.s_plus))
            idx = int(np.nanargmin(curve.s_plus))
            rows.append((float(kappa), at_fixed, float(curve.s_plus[idx]),
                         float(curve.omega[idx]), analysis.bandwidth,
                         len(analysis.minima)))
        emit("sweep_kappa.csv",
             ["kappa", "s_plus_fixed", "s_plus_min", "omega_min",
              "bandwidth", "n_minima"],
             rows, _annotations(base, [f"axis = kappa",
                                       f"omega_fixed = {spec.omega_fixed!r}"]))
        if want_svg and rows:
            arr = np.array([r[:2] for r in rows])
            svg.line_plot(out / "sweep_kappa.svg", arr[:, 0],
                          {"S+(omega_fixed)": arr[:, 1]},
                          title="kappa sweep", xlabel="kappa (g)",
                          ylabel="S+")
            written.append(out / "sweep_kappa.svg")
    elif spec.axis == "tau":
        table = evolution_table(eff, spec.grid("tau"),
                                tau_diss=check_validity(base, eff).tau_diss)
        if "squeeze" in spec.outputs:
            emit("sweep_squeeze.csv", ["tau", "r", "eps_phase",
                                       "within_horizon"],
                 table, _annotations(base, ["axis = tau"]))
        if want_svg:
            arr = np.array([row[:2] for row in table])
            svg.line_plot(out / "sweep_squeeze.svg", arr[:, 0],
                          {"r": arr[:, 1]}, title="tau sweep",
                          xlabel="tau (1/g)", ylabel="squeeze magnitude")
            written.append(out / "sweep_squeeze.svg")
    else:  # omega_x_kappa
        omegas = spec.grid("omega")
        kappas = spec.grid("kappa")
        rows = []
        surface = np.empty((kappas.size, omegas.size))
        for j, kappa in enumerate(kappas):
            p = replace(base, kappa1=float(kappa), kappa2=float(kappa))
            curve = squeezing_spectrum(p, eff, omegas)
            surface[j] = curve.s_plus
            for i, w in enumerate(omegas):
                rows.append((float(kappa), float(w), float(curve.s_plus[i]),
                             bool(curve.entangled[i])))
        emit("sweep_surface.csv", ["kappa", "omega", "s_plus", "entangled"],
             rows, _annotations(base, ["axis = omega_x_kappa"]))
        if want_svg:
            svg.heatmap(out / "sweep_surface.svg", omegas, kappas, surface,
                        title="S+ surface")
            written.append(out / "sweep_surface.svg")

    if "validity" in spec.outputs:
        rep_path = out / "sweep_validity.txt"
        rep_path.write_text(
            "\n".join(_annotations(base, [f"axis = {spec.axis}"])) + "\n",
            encoding="utf-8")
        written.append(rep_path)
    return written


def _kappa_label(kappa: float) -> str:
    return f"{kappa:g}".replace(".", "p")


def run_figure(name: str, out_dir, fmt: str = "both",
               grid: int | None = None) -> list[Path]:
    """Produce one bundled dataset (fig2, fig3 or fig4)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    want_svg = fmt in ("svg", "both")
    want_csv = fmt in ("csv", "both")
    written: list[Path] = []

    if name == "fig2":
        omegas = default_omega_grid(grid or FIG2_OMEGA_COUNT)
        kappas = np.linspace(0.05, 2.0, FIG2_KAPPA_COUNT)
        eff = derive_effective(FIGURE_BASE)
        surface = np.empty((kappas.size, omegas.size))
        rows = []
        for j, kappa in enumerate(kappas):
            p = replace(FIGURE_BASE, kappa1=float(kappa), kappa2=float(kappa))
            curve = squeezing_spectrum(p, eff, omegas)
            surface[j] = curve.s_plus
            for i, w in enumerate(omegas):
                rows.append((float(kappa), float(w), float(curve.s_plus[i]),
                             bool(curve.entangled[i])))
        notes = _annotations(FIGURE_BASE, [
            "dataset = fig2 (S+ surface over omega and kappa)",
            "kappa_grid = linspace(0.05, 2.0, 40); range not pinned by the "
            "source material, chosen to cover all fig3 slices",
        ])
        if want_csv:
            written.append(write_csv(out / "fig2_surface.csv",
                                     ["kappa", "omega", "s_plus", "entangled"],
                                     rows, notes))
        if want_svg:
            svg.heatmap(out / "fig2_surface.svg", omegas, kappas, surface,
                        title="fig2: S+ over omega and kappa")
            written.append(out / "fig2_surface.svg")
    elif name == "fig3":
        omegas = default_omega_grid(grid) if grid else default_omega_grid()
        eff = derive_effective(FIGURE_BASE)
        curves = {}
        report_lines = []
        for kappa in FIG3_KAPPAS:
            p = replace(FIGURE_BASE, kappa1=kappa, kappa2=kappa)
            curve = squeezing_spectrum(p, eff, omegas)
            curves[kappa] = curve
            analysis = analyze_spectrum(curve)
            report_lines.append(f"kappa = {kappa!r}")
            report_lines.append(f"  minima = {analysis.minima}")
            report_lines.append(f"  bandwidth = {analysis.bandwidth!r}")
            report_lines.append(f"  global_min = {np.nanmin(curve.s_plus)!r}")
            if want_csv:
                notes = _annotations(p, [f"dataset = fig3 kappa={kappa!r}"])
                written.append(write_spectrum_csv(
                    out / f"fig3_kappa_{_kappa_label(kappa)}.csv", curve,
                    notes))
        if want_svg:
            svg.line_plot(out / "fig3.svg", omegas,
                          {f"kappa={k:g}": c.s_plus
                           for k, c in curves.items()},
                          title="fig3: output squeezing spectra",
                          ylabel="S+")
            written.append(out / "fig3.svg")
        rep = out / "fig3_report.txt"
        rep.write_text("\n".join(report_lines) + "\n", encoding="utf-8")
        written.append(rep)
    elif name == "fig4":
        params = replace(FIGURE_BASE, **FIG4_DRIVE)
        eff = derive_effective(params)
        omegas = default_omega_grid(grid) if grid else default_omega_grid()
        curve = squeezing_spectrum(params, eff, omegas)
        notes = _annotations(params, ["dataset = fig4 (intensity noise N1)"])
        if want_csv:
            written.append(write_csv(out / "fig4_n1.csv",
                                     ["omega", "n1", "n2"],
                                     zip(curve.omega, curve.n1, curve.n2),
                                     notes))
        if want_svg:
            svg.line_plot(out / "fig4_n1.svg", curve.omega,
                          {"N1": curve.n1}, title="fig4: intensity noise",
                          ylabel="N1")
            written.append(out / "fig4_n1.svg")
        rep = out / "fig4_report.txt"
        rep.write_text(
            displacement_report(params, eff) + "\n"
            + f"peak_term_1 = {curve.peak_terms[0]!r}\n"
            + f"peak_term_2 = {curve.peak_terms[1]!r}\n",
            encoding="utf-8")
        written.append(rep)
    else:
        raise ValueError(f"unknown figure {name!r}; expected fig2|fig3|fig4")
    return written
