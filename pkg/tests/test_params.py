"""Parameter derivation against an exact-rational reference."""

import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from cavsqueeze.params import (ParameterError, SystemParams, check_validity,
                               derive_effective, dissipation_horizon,
                               dropped_energy_offset, raman_couplings)

FIG2 = SystemParams(g1=1, g2=1, omega3=1.5j, omega4=1.5,
                    delta1=10, delta2=12, delta3=11.5, delta4=10.5,
                    kappa1=0.5, kappa2=0.5)


def rational_reference():
    """Exact-rational evaluation of the coefficient formulas for the
    reference working point (all inputs are rational there; eta is
    purely imaginary because omega3* omega4* = -|omega3||omega4| i)."""
    d1, d2, d3, d4 = Fraction(10), Fraction(12), Fraction(23, 2), Fraction(21, 2)
    o3_sq = o4_sq = Fraction(9, 4)
    ds1, ds2 = d3 - d1, d4 - d2
    inv13 = (1 / d1 + 1 / d3) / 2
    inv24 = (1 / d2 + 1 / d4) / 2
    delta = o3_sq / d3 - o4_sq / d4 + (ds1 - ds2) / 2
    half = (ds1 + ds2) / 2
    lam1 = o3_sq * inv13 ** 2 / delta - half
    lam2 = o4_sq * inv24 ** 2 / delta + 1 / d2 - half
    eta_imag = -Fraction(9, 4) * inv13 * inv24 / delta
    return dict(delta=delta, inv13=inv13, inv24=inv24,
                lam1=lam1, lam2=lam2, eta_imag=eta_imag)


def test_reference_point_matches_rational_oracle():
    eff = derive_effective(FIG2)
    ref = rational_reference()
    assert eff.delta == pytest.approx(float(ref["delta"]), abs=1e-15)
    assert 1.0 / eff.delta_13 == pytest.approx(float(ref["inv13"]), abs=1e-16)
    assert 1.0 / eff.delta_24 == pytest.approx(float(ref["inv24"]), abs=1e-16)
    assert eff.lambda1 == pytest.approx(float(ref["lam1"]), abs=1e-15)
    assert eff.lambda2 == pytest.approx(float(ref["lam2"]), abs=1e-15)
    assert eff.eta.real == 0.0
    assert eff.eta.imag == pytest.approx(float(ref["eta_imag"]), abs=1e-15)


def test_reference_point_published_roundings():
    eff = derive_effective(FIG2)
    c13, c24 = raman_couplings(FIG2, eff)
    assert eff.delta == pytest.approx(1.48, abs=0.005)
    assert abs(c13) == pytest.approx(0.14, abs=0.005)
    assert abs(c24) == pytest.approx(0.13, abs=0.005)
    assert eff.lambda1 == pytest.approx(0.013272, abs=5e-7)
    assert eff.lambda2 == pytest.approx(0.095442, abs=5e-7)
    assert eff.eta.imag == pytest.approx(-0.012677, abs=1e-6)
    assert eff.delta_s1 == 1.5 and eff.delta_s2 == -1.5
    # symmetric two-photon detunings cancel exactly, not to rounding
    assert (eff.delta_s1 + eff.delta_s2) / 2.0 == 0.0


def _random_params(rng):
    sign = lambda: rng.choice([-1.0, 1.0])
    return SystemParams(
        g1=rng.normal() + 1j * rng.normal(),
        g2=rng.normal() + 1j * rng.normal(),
        omega3=rng.normal() + 1j * rng.normal(),
        omega4=rng.normal() + 1j * rng.normal(),
        delta1=sign() * rng.uniform(5, 20),
        delta2=sign() * rng.uniform(5, 20),
        delta3=sign() * rng.uniform(5, 20),
        delta4=sign() * rng.uniform(5, 20),
        kappa1=rng.uniform(0, 2),
        kappa2=rng.uniform(0, 2),
    )


@pytest.mark.parametrize("seed", range(6))
def test_harmonic_mean_identities(seed):
    rng = np.random.default_rng(seed)
    p = _random_params(rng)
    eff = derive_effective(p)
    lhs13 = 1.0 / eff.delta_13
    rhs13 = 0.5 * (1.0 / p.delta1 + 1.0 / p.delta3)
    assert abs(lhs13 - rhs13) <= 1e-14 * abs(rhs13)
    lhs24 = 1.0 / eff.delta_24
    rhs24 = 0.5 * (1.0 / p.delta2 + 1.0 / p.delta4)
    assert abs(lhs24 - rhs24) <= 1e-14 * abs(rhs24)
    assert eff.lambda1 == eff.lambda1.real
    assert eff.lambda2 == eff.lambda2.real


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("scale", [0.1, 0.5, 3.0, 10.0])
def test_first_order_homogeneity(seed, scale):
    rng = np.random.default_rng(seed + 100)
    p = _random_params(rng)
    scaled = SystemParams(
        g1=p.g1 * scale, g2=p.g2 * scale,
        omega3=p.omega3 * scale, omega4=p.omega4 * scale,
        delta1=p.delta1 * scale, delta2=p.delta2 * scale,
        delta3=p.delta3 * scale, delta4=p.delta4 * scale,
        kappa1=p.kappa1 * scale, kappa2=p.kappa2 * scale,
        mu1=p.mu1 * scale, mu2=p.mu2 * scale)
    eff = derive_effective(p)
    eff_s = derive_effective(scaled)
    for name in ("delta_s1", "delta_s2", "delta", "lambda1", "lambda2"):
        assert getattr(eff_s, name) == pytest.approx(
            scale * getattr(eff, name), rel=1e-12)
    assert abs(eff_s.eta) == pytest.approx(scale * abs(eff.eta), rel=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_label_swap_structure(seed):
    """Swapping (g1,omega3,delta1,delta3,mode1) <-> (g2,omega4,delta2,
    delta4,mode2) flips the sign of the mismatch, so the pair terms of
    lambda1/lambda2 exchange with a sign, the pair coupling maps to
    -eta, and the stark term stays tied to the second slot (it follows
    the initial atomic state, not the mode labels)."""
    rng = np.random.default_rng(seed + 300)
    p = _random_params(rng)
    swapped = SystemParams(
        g1=p.g2, g2=p.g1, omega3=p.omega4, omega4=p.omega3,
        delta1=p.delta2, delta2=p.delta1, delta3=p.delta4, delta4=p.delta3,
        kappa1=p.kappa2, kappa2=p.kappa1)
    eff = derive_effective(p)
    eff_s = derive_effective(swapped)
    half = (eff.delta_s1 + eff.delta_s2) / 2.0
    half_s = (eff_s.delta_s1 + eff_s.delta_s2) / 2.0
    assert eff_s.delta == pytest.approx(-eff.delta, rel=1e-12)
    assert half_s == pytest.approx(half, rel=1e-12, abs=1e-15)
    assert eff_s.eta == pytest.approx(-eff.eta, rel=1e-12)
    pair1 = eff.lambda1 + half
    pair2 = eff.lambda2 + half - abs(p.g2) ** 2 / p.delta2
    assert eff_s.lambda1 + half_s == pytest.approx(-pair2, rel=1e-10, abs=1e-13)
    stark_swapped = abs(p.g1) ** 2 / p.delta1  # built from slot-2 fields
    assert (eff_s.lambda2 + half_s - stark_swapped
            == pytest.approx(-pair1, rel=1e-10, abs=1e-13))


def test_label_swap_conjugates_eta_at_reference_point():
    # at the reference point eta is purely imaginary, so the sign flip
    # from the swapped mismatch coincides with complex conjugation
    swapped = SystemParams(
        g1=FIG2.g2, g2=FIG2.g1, omega3=FIG2.omega4, omega4=FIG2.omega3,
        delta1=FIG2.delta2, delta2=FIG2.delta1,
        delta3=FIG2.delta4, delta4=FIG2.delta3)
    eta = derive_effective(FIG2).eta
    eta_swapped = derive_effective(swapped).eta
    assert eta_swapped == pytest.approx(eta.conjugate(), abs=1e-15)


def test_switched_off_drive_zeroes_eta():
    eff = derive_effective(replace(FIG2, omega3=0j))
    assert eff.eta == 0
    assert eff.lambda1 == pytest.approx(0.0, abs=1e-15)
    eff4 = derive_effective(replace(FIG2, omega4=0j))
    assert eff4.eta == 0


def test_zero_detuning_rejected():
    with pytest.raises(ParameterError) as exc:
        SystemParams(g1=1, g2=1, omega3=1, omega4=1,
                     delta1=0.0, delta2=12, delta3=11.5, delta4=10.5)
    assert exc.value.symbol == "delta1"


def test_zero_mismatch_rejected():
    p = SystemParams(g1=1, g2=1, omega3=1, omega4=1,
                     delta1=5, delta2=5, delta3=10, delta4=10)
    with pytest.raises(ParameterError) as exc:
        derive_effective(p)
    assert exc.value.symbol == "delta"


def test_negative_decay_rejected():
    with pytest.raises(ParameterError) as exc:
        replace(FIG2, kappa1=-0.1)
    assert exc.value.symbol == "kappa1"


def test_complex_detuning_rejected():
    with pytest.raises(ParameterError):
        replace(FIG2, delta2=1 + 1j)


def test_validity_report_reference_point():
    eff = derive_effective(FIG2)
    rep = check_validity(FIG2, eff, margin_first=5.0, margin_second=5.0)
    assert rep.ratio_first_stage == pytest.approx(10.0 / 1.5, rel=1e-12)
    assert rep.ratio_second_stage == pytest.approx(10.565, abs=1e-3)
    assert rep.pass_first and rep.pass_second
    assert rep.tau_diss == 2.0
    tight = check_validity(FIG2, eff, margin_first=8.0, margin_second=5.0)
    assert not tight.pass_first and tight.pass_second


@pytest.mark.parametrize("kappas,expected", [
    ((0.5, 2.0), 0.5),
    ((0.05, 0.05), 20.0),
    ((0.0, 2.0), 0.5),
    ((0.0, 0.0), math.inf),
])
def test_dissipation_horizon(kappas, expected):
    assert dissipation_horizon(*kappas) == expected


def test_dropped_offset_value():
    eff = derive_effective(FIG2)
    offset = dropped_energy_offset(FIG2, eff)
    assert offset == pytest.approx(
        abs(FIG2.omega3) ** 2 / (eff.delta * eff.delta_13 ** 2), rel=1e-12)
