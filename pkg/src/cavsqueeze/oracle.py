"""Independent spectrum oracle and machine-readable verification reports.

:func:`spectrum_matrix_oracle` rebuilds the full output spectra purely
from numerical 4x4 frequency-domain solves of the Langevin system (see
:mod:`cavsqueeze.linear_response`), with no use of the closed forms in
:mod:`cavsqueeze.spectra`.  Agreement between the two routes is the
package's core correctness gate.

Reports are plain text ``key = value`` lines so CI can grep thresholds.
"""

from __future__ import annotations

import numpy as np

from . import linear_response as lr
from .params import EffectiveParams, SystemParams
from .spectra import DUAN_BOUND, SpectrumCurve, default_omega_grid, displacements


def spectrum_matrix_oracle(params: SystemParams, eff: EffectiveParams,
                           omega_grid=None) -> SpectrumCurve:
    """Output spectra from the frequency-domain matrix path alone."""
    w = default_omega_grid() if omega_grid is None else np.asarray(omega_grid, dtype=float)
    args = (eff.lambda1, eff.lambda2, eff.eta, params.kappa1, params.kappa2, w)
    s_plus, flag_p = lr.quadrature_spectrum(*args, lr.QUAD_PLUS)
    s_minus, flag_m = lr.quadrature_spectrum(*args, lr.QUAD_MINUS)
    n1, n2, flag_n = lr.intensity_noise(*args)
    flagged = flag_p | flag_m | flag_n
    if flagged.any():
        for arr in (s_plus, s_minus, n1, n2):
            arr[flagged] = np.nan
    alpha0, beta0 = displacements(params, eff)
    return SpectrumCurve(
        omega=w,
        s_plus=s_plus,
        s_minus=s_minus,
        n1=n1,
        n2=n2,
        entangled=(s_plus + s_minus) < DUAN_BOUND,
        peak_terms=(params.kappa1 * abs(alpha0) ** 2,
                    params.kappa2 * abs(beta0) ** 2),
        flagged=flagged,
    )


def max_relative_deviation(a: np.ndarray, b: np.ndarray,
                           floor: float = 1e-300) -> float:
    """max |a - b| / max(|a|, |b|, floor), NaNs excluded."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    keep = ~(np.isnan(a) | np.isnan(b))
    if not keep.any():
        return np.nan
    scale = np.maximum(np.maximum(np.abs(a[keep]), np.abs(b[keep])), floor)
    return float(np.max(np.abs(a[keep] - b[keep]) / scale))


def format_report(entries) -> str:
    """Render (key, value) pairs as ``key = value`` lines."""
    lines = []
    for key, value in entries:
        if isinstance(value, float):
            lines.append(f"{key} = {value:.12g}")
        else:
            lines.append(f"{key} = {value}")
    return "\n".join(lines)
