"""Intracavity squeeze evolution of the two modes.

Starting from a two-mode coherent state, the quadratic effective
Hamiltonian produces a two-mode coherent-squeezed state.  The closed
form for the squeeze magnitude ``r`` and phase ``eps`` uses

    phi^2 = (|eta|^2 - Lambda^2) tau^2,        Lambda = (lambda1+lambda2)/2
    b0    = 1 / (phi cosh phi + i tau Lambda sinh phi)
    r     = artanh |tau eta* b0 sinh phi|
    eps   = arg(-i eta* b0 sinh phi)

Everything is evaluated through the entire functions cosh(phi) and
sinh(phi)/phi of phi^2, so the over-detuned regime phi^2 < 0 (where the
hyperbolic functions turn trigonometric) needs no branch cuts and the
result is smooth through phi = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .params import EffectiveParams, SystemParams, dissipation_horizon

_SERIES_CUTOFF = 1e-8  # on phi^2, i.e. |phi| < 1e-4


class SqueezeDomainError(ValueError):
    """|tau eta* b0 sinh phi| reached 1; the closed form stops being
    evaluable there (the artanh argument leaves its domain).  This marks
    the validity boundary of the formula, not a numerical fault."""

    def __init__(self, magnitude: float):
        super().__init__(
            f"squeeze formula out of domain: |tau eta* b0 sinh phi| = "
            f"{magnitude} >= 1")
        self.magnitude = magnitude


@dataclass(frozen=True)
class EvolutionInput:
    """Effective parameters plus the initial coherent amplitudes and the
    evolution time (units of 1/g).  ``tau_diss`` is the decay horizon
    used only to set the advisory ``within_horizon`` flag; it defaults
    to infinity (lossless)."""

    eff: EffectiveParams
    eps1: complex = 0j
    eps2: complex = 0j
    tau: float = 0.0
    tau_diss: float = field(default=math.inf)

    def __post_init__(self):
        if self.tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")


@dataclass(frozen=True)
class SqueezeResult:
    """Squeeze parameters at time tau.

    ``phi`` is the principal value of sqrt(phi^2) (imaginary in the
    over-detuned regime), ``r >= 0`` the squeeze magnitude, ``eps_phase``
    the squeeze phase in (-pi, pi], ``theta = r exp(i eps)``.
    ``within_horizon`` is advisory: evolution is still evaluated beyond
    ``tau_diss``, the flag just records that decay can no longer be
    neglected there.
    """

    phi: complex
    b0: complex
    r: float
    eps_phase: float
    theta: complex
    within_horizon: bool


def _entire_cosh_sinhc(x: float) -> tuple[float, float]:
    """cosh(sqrt(x)) and sinh(sqrt(x))/sqrt(x) as entire functions of x."""
    if abs(x) < _SERIES_CUTOFF:
        c = 1.0 + x / 2.0 + x * x / 24.0
        s = 1.0 + x / 6.0 + x * x / 120.0
        return c, s
    if x > 0.0:
        q = math.sqrt(x)
        return math.cosh(q), math.sinh(q) / q
    q = math.sqrt(-x)
    return math.cos(q), math.sin(q) / q


def squeeze_parameters(inp: EvolutionInput) -> SqueezeResult:
    """Evaluate the squeeze magnitude and phase at time ``inp.tau``.

    Raises :class:`SqueezeDomainError` when the artanh argument reaches
    one (resonant growth past the formula's reach).
    """
    eff = inp.eff
    tau = inp.tau
    lam_sum = (eff.lambda1 + eff.lambda2) / 2.0
    x = (abs(eff.eta) ** 2 - lam_sum ** 2) * tau ** 2
    cosh_phi, sinhc_phi = _entire_cosh_sinhc(x)

    # b0 sinh(phi) = sinhc / (cosh + i tau Lambda sinhc): even in phi,
    # finite at phi = 0, so r and eps are smooth across the branch point.
    denom = cosh_phi + 1j * tau * lam_sum * sinhc_phi
    u = eff.eta.conjugate() * sinhc_phi / denom
    magnitude = abs(tau * u)
    if magnitude >= 1.0:
        raise SqueezeDomainError(magnitude)
    r = math.atanh(magnitude)
    direction = -1j * u
    eps = math.atan2(direction.imag, direction.real) if direction != 0 else 0.0

    phi = cmath.sqrt(complex(x))
    b0 = 1.0 / (phi * denom) if phi != 0 else complex(math.inf)
    return SqueezeResult(
        phi=phi,
        b0=b0,
        r=r,
        eps_phase=eps,
        theta=r * cmath.exp(1j * eps),
        within_horizon=tau <= inp.tau_diss,
    )


def horizon(eff: EffectiveParams, params: SystemParams) -> float:
    """Decay-time horizon min(1/kappa1, 1/kappa2) for unitary evolution.

    ``eff`` is accepted for signature symmetry with the other
    operations; only the decay rates matter.
    """
    del eff
    return dissipation_horizon(params.kappa1, params.kappa2)


def evolution_table(eff: EffectiveParams, taus, eps1: complex = 0j,
                    eps2: complex = 0j, tau_diss: float = math.inf):
    """Squeeze parameters over a tau grid, one row per tau.

    Returns a list of (tau, r, eps_phase, within_horizon) tuples, the
    payload of the ``evolve`` CSV output.
    """
    rows = []
    for tau in taus:
        res = squeeze_parameters(EvolutionInput(
            eff=eff, eps1=eps1, eps2=eps2, tau=float(tau), tau_diss=tau_diss))
        rows.append((float(tau), res.r, res.eps_phase, res.within_horizon))
    return rows
