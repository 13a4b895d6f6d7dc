"""Physical parameters and the effective two-mode squeezing coefficients.

The model is a single four-level atom (levels a, b, c, d) in a doubly
resonant cavity.  Cavity mode 1 couples a <-> c at rate ``g1`` with
detuning ``delta1``; mode 2 couples b <-> d at rate ``g2`` with detuning
``delta2``.  Two classical fields drive a <-> d and b <-> c with Rabi
frequencies ``omega3``, ``omega4`` and detunings ``delta3``, ``delta4``.
All rates are expressed in units of a common reference rate g, so no
absolute frequency scale is ever stored.

Eliminating the far-detuned levels twice leaves a quadratic Hamiltonian
on the two cavity modes,

    H = lambda1 n1 + lambda2 n2 + eta a1 a2 + conj(eta) a1+ a2+,

whose coefficients are derived here, together with an audit of the two
large-detuning conditions that justify the eliminations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ParameterError(ValueError):
    """Invalid physical parameter; ``symbol`` names the offender."""

    def __init__(self, symbol: str, message: str):
        super().__init__(message)
        self.symbol = symbol


_REAL_FIELDS = ("delta1", "delta2", "delta3", "delta4", "kappa1", "kappa2")
_COMPLEX_FIELDS = ("g1", "g2", "omega3", "omega4", "mu1", "mu2")


@dataclass(frozen=True)
class SystemParams:
    """Raw inputs, in units of the reference rate g.

    ``g1``, ``g2``, ``omega3``, ``omega4``, ``mu1``, ``mu2`` may be
    complex; the detunings are real and must be nonzero (they appear as
    denominators), and the cavity decay rates are nonnegative.
    ``mu1``, ``mu2`` are classical drive strengths on the two cavity
    modes and only matter for the coherent output displacements.
    """

    g1: complex
    g2: complex
    omega3: complex
    omega4: complex
    delta1: float
    delta2: float
    delta3: float
    delta4: float
    kappa1: float = 0.0
    kappa2: float = 0.0
    mu1: complex = 0j
    mu2: complex = 0j

    def __post_init__(self):
        for name in _REAL_FIELDS:
            value = getattr(self, name)
            if isinstance(value, complex):
                if value.imag != 0.0:
                    raise ParameterError(name, f"{name} must be real, got {value}")
                object.__setattr__(self, name, value.real)
        for name in ("delta1", "delta2", "delta3", "delta4"):
            if getattr(self, name) == 0.0:
                raise ParameterError(name, f"detuning {name} must be nonzero")
        for name in ("kappa1", "kappa2"):
            if getattr(self, name) < 0.0:
                raise ParameterError(name, f"decay rate {name} must be >= 0")
        for name in _COMPLEX_FIELDS:
            object.__setattr__(self, name, complex(getattr(self, name)))


@dataclass(frozen=True)
class EffectiveParams:
    """Derived quantities of the eliminated model.

    ``delta_s1 = delta3 - delta1`` and ``delta_s2 = delta4 - delta2``
    are the two-photon detunings of the Raman pairs; ``delta_13`` and
    ``delta_24`` are the harmonic-mean detunings of each pair;
    ``delta`` is the residual two-photon mismatch left after the first
    elimination.  ``lambda1``, ``lambda2`` are the real frequency
    shifts of the two modes and ``eta`` the complex pair-creation
    coupling of the effective Hamiltonian.
    """

    delta_s1: float
    delta_s2: float
    delta_13: float
    delta_24: float
    delta: float
    lambda1: float
    lambda2: float
    eta: complex


@dataclass(frozen=True)
class ValidityReport:
    """Audit of the two elimination conditions, report-only.

    ``ratio_first_stage``  = min_k |delta_k| / max(|g1|,|g2|,|omega3|,|omega4|)
    ``ratio_second_stage`` = |delta| / max(|omega3* g1/delta_13|, |omega4 g2*/delta_24|)
    ``tau_diss``           = min(1/kappa1, 1/kappa2), the horizon beyond
    which cavity decay invalidates purely unitary intracavity evolution
    (infinite for a lossless cavity).
    """

    ratio_first_stage: float
    ratio_second_stage: float
    tau_diss: float
    pass_first: bool
    pass_second: bool


def _half_detuning_sum(params: SystemParams) -> float:
    # computed once from delta_s1 + delta_s2 so the symmetric choice
    # delta_s1 = -delta_s2 gives an exact zero
    return ((params.delta3 - params.delta1) + (params.delta4 - params.delta2)) / 2.0


def derive_effective(params: SystemParams) -> EffectiveParams:
    """Derive the effective-Hamiltonian coefficients from raw inputs.

    Raises :class:`ParameterError` if the two-photon mismatch comes out
    exactly zero, since it divides every coefficient.
    """
    p = params
    delta_s1 = p.delta3 - p.delta1
    delta_s2 = p.delta4 - p.delta2
    inv13 = 0.5 * (1.0 / p.delta1 + 1.0 / p.delta3)
    inv24 = 0.5 * (1.0 / p.delta2 + 1.0 / p.delta4)
    delta = (abs(p.omega3) ** 2 / p.delta3
             - abs(p.omega4) ** 2 / p.delta4
             + (delta_s1 - delta_s2) / 2.0)
    if delta == 0.0:
        raise ParameterError(
            "delta", "two-photon mismatch delta is zero; the second "
            "elimination is undefined at this working point")
    half = (delta_s1 + delta_s2) / 2.0
    lambda1 = abs(p.omega3 * p.g1) ** 2 * inv13 ** 2 / delta - half
    lambda2 = (abs(p.omega4 * p.g2) ** 2 * inv24 ** 2 / delta
               + abs(p.g2) ** 2 / p.delta2 - half)
    eta = (p.g1 * p.g2 * p.omega3.conjugate() * p.omega4.conjugate()
           * inv13 * inv24 / delta)
    return EffectiveParams(
        delta_s1=delta_s1,
        delta_s2=delta_s2,
        delta_13=(1.0 / inv13 if inv13 != 0.0 else math.inf),
        delta_24=(1.0 / inv24 if inv24 != 0.0 else math.inf),
        delta=delta,
        lambda1=lambda1,
        lambda2=lambda2,
        eta=eta,
    )


def dropped_energy_offset(params: SystemParams, eff: EffectiveParams) -> float:
    """Constant energy offset discarded when restricting to level d.

    Normal ordering of the pair terms leaves the scalar
    |omega3 g1|^2 / (delta * delta_13^2) behind; it shifts every level
    equally and never enters the dynamics.  Exposed so the restriction
    can be verified: the d-sector of the doubly eliminated Hamiltonian
    equals the effective Hamiltonian plus exactly this constant.
    """
    inv13 = 0.0 if math.isinf(eff.delta_13) else 1.0 / eff.delta_13
    return abs(params.omega3 * params.g1) ** 2 * inv13 ** 2 / eff.delta


def raman_couplings(params: SystemParams, eff: EffectiveParams) -> tuple[complex, complex]:
    """Second-stage couplings (omega3* g1/delta_13, omega4 g2*/delta_24)."""
    inv13 = 0.0 if math.isinf(eff.delta_13) else 1.0 / eff.delta_13
    inv24 = 0.0 if math.isinf(eff.delta_24) else 1.0 / eff.delta_24
    return (params.omega3.conjugate() * params.g1 * inv13,
            params.omega4 * params.g2.conjugate() * inv24)


def dissipation_horizon(kappa1: float, kappa2: float) -> float:
    """min(1/kappa1, 1/kappa2); a vanishing rate contributes no bound."""
    bounds = [1.0 / k for k in (kappa1, kappa2) if k > 0.0]
    return min(bounds) if bounds else math.inf


def check_validity(params: SystemParams, eff: EffectiveParams,
                   margin_first: float = 5.0,
                   margin_second: float = 5.0) -> ValidityReport:
    """Audit both elimination conditions against the given margins.

    Report-only: listed working points in the source material run at
    ratios below 10, so a failed margin is advice, never an error.
    """
    drive_scale = max(abs(params.g1), abs(params.g2),
                      abs(params.omega3), abs(params.omega4))
    min_det = min(abs(params.delta1), abs(params.delta2),
                  abs(params.delta3), abs(params.delta4))
    ratio_first = min_det / drive_scale if drive_scale > 0.0 else math.inf

    c13, c24 = raman_couplings(params, eff)
    raman_scale = max(abs(c13), abs(c24))
    ratio_second = abs(eff.delta) / raman_scale if raman_scale > 0.0 else math.inf

    return ValidityReport(
        ratio_first_stage=ratio_first,
        ratio_second_stage=ratio_second,
        tau_diss=dissipation_horizon(params.kappa1, params.kappa2),
        pass_first=ratio_first >= margin_first,
        pass_second=ratio_second >= margin_second,
    )
