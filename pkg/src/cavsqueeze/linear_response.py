"""Frequency-domain linear response of the lossy two-mode system.

The displaced fluctuation operators obey linear Langevin equations
driven by vacuum input noise.  With the Fourier convention
a(w) = (2 pi)^(-1/2) Integral a(t) exp(i w t) dt (so d/dt -> -i w) and
writing the transform of a daggered operator at +w, the four components
v = (a1, a1+, a2, a2+) satisfy M(w) v = -L n with n the matching input
noise vector and L = diag(sqrt(kappa1), sqrt(kappa1), sqrt(kappa2),
sqrt(kappa2)).  The input-output relation a_out = a_in + sqrt(kappa) a
then gives the output noise as out = T(w) n with

    T(w) = 1 - L M(w)^(-1) L.

Everything downstream of T (quadrature spectra, intensity noise) is
assembled here generically by numerical 4x4 solves, with no reference
to any closed-form spectrum, so this module doubles as the independent
verification path for the closed forms.

Vacuum input correlations in this convention: the only nonvanishing
pair is <a_in(w) a_in+(w')> = delta(w + w').
"""

from __future__ import annotations

import numpy as np

COND_LIMIT = 1e12  # flag threshold for ill-conditioned system matrices

# quadrature coefficient vectors c such that I(w) = c . out(w):
# QUAD_PLUS  ~ (x1 - x2),  QUAD_MINUS ~ (p1 + p2)
QUAD_PLUS = np.array([1.0, 1.0, -1.0, -1.0]) / np.sqrt(2.0)
QUAD_MINUS = np.array([-1.0j, 1.0j, -1.0j, 1.0j]) / np.sqrt(2.0)


def branch_coefficients(lambda1, lambda2, kappa1, kappa2, omega):
    """The four response denominator factors at each frequency.

    alpha1 = kappa1/2 + i(lambda1 - w)   alpha2 = kappa2/2 - i(lambda2 + w)
    beta1  = kappa2/2 + i(lambda2 - w)   beta2  = kappa1/2 - i(lambda1 + w)
    """
    w = np.asarray(omega, dtype=float)
    alpha1 = kappa1 / 2.0 + 1j * (lambda1 - w)
    alpha2 = kappa2 / 2.0 - 1j * (lambda2 + w)
    beta1 = kappa2 / 2.0 + 1j * (lambda2 - w)
    beta2 = kappa1 / 2.0 - 1j * (lambda1 + w)
    return alpha1, alpha2, beta1, beta2


def system_matrix(lambda1, lambda2, eta, kappa1, kappa2, omega):
    """Stacked (n, 4, 4) Langevin system matrices M(w)."""
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    alpha1, alpha2, beta1, beta2 = branch_coefficients(
        lambda1, lambda2, kappa1, kappa2, w)
    eta = complex(eta)
    m = np.zeros((w.size, 4, 4), dtype=complex)
    m[:, 0, 0] = alpha1
    m[:, 0, 3] = 1j * eta.conjugate()
    m[:, 1, 1] = beta2
    m[:, 1, 2] = -1j * eta
    m[:, 2, 2] = beta1
    m[:, 2, 1] = 1j * eta.conjugate()
    m[:, 3, 3] = alpha2
    m[:, 3, 0] = -1j * eta
    return m


def transfer_matrices(lambda1, lambda2, eta, kappa1, kappa2, omega):
    """Output transfer matrices T(w) = 1 - L M(w)^(-1) L, plus a flag
    array marking frequencies where M(w) is singular or ill-conditioned
    (condition number beyond ``COND_LIMIT``).  Flagged points carry NaN
    entries instead of being dropped."""
    m = system_matrix(lambda1, lambda2, eta, kappa1, kappa2, omega)
    conds = np.linalg.cond(m)
    flagged = ~np.isfinite(conds) | (conds > COND_LIMIT)
    safe = np.where(flagged[:, None, None], np.eye(4, dtype=complex), m)
    ell = np.diag([np.sqrt(kappa1), np.sqrt(kappa1),
                   np.sqrt(kappa2), np.sqrt(kappa2)])
    rhs = np.broadcast_to(ell, m.shape)
    t = np.eye(4) - ell @ np.linalg.solve(safe, rhs)
    t = np.where(flagged[:, None, None], np.nan, t)
    return t, flagged


def quadrature_spectrum(lambda1, lambda2, eta, kappa1, kappa2, omega, quad):
    """Stationary noise spectrum of a joint output quadrature.

    ``quad`` is the coefficient vector of the quadrature in the output
    components (a1, a1+, a2, a2+).  The spectrum is the coefficient of
    delta(w + w') in the symmetrized two-frequency correlator under
    vacuum input, assembled from T(w) and T(-w):

        S(w) = (w1(w) w2(-w) + w3(w) w4(-w) + (w <-> -w)) / 2

    with w(w) = quad . T(w).  Returns (spectrum, flagged).
    """
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    t_pos, flag_pos = transfer_matrices(lambda1, lambda2, eta, kappa1, kappa2, w)
    t_neg, flag_neg = transfer_matrices(lambda1, lambda2, eta, kappa1, kappa2, -w)
    wp = np.einsum("j,njk->nk", quad, t_pos)
    wm = np.einsum("j,njk->nk", quad, t_neg)
    s = 0.5 * (wp[:, 0] * wm[:, 1] + wp[:, 2] * wm[:, 3]
               + wm[:, 0] * wp[:, 1] + wm[:, 2] * wp[:, 3])
    return s.real, flag_pos | flag_neg


def intensity_noise(lambda1, lambda2, eta, kappa1, kappa2, omega):
    """Stationary parts of the output intensity correlations.

    N_j(w) is the coefficient of delta(w - w') in <a_jout+ a_jout>;
    under vacuum input only the anomalous input couplings contribute,
    so N1 = |T_12|^2 + |T_14|^2 and N2 = |T_32|^2 + |T_34|^2.
    Returns (n1, n2, flagged).
    """
    t, flagged = transfer_matrices(lambda1, lambda2, eta, kappa1, kappa2, omega)
    n1 = np.abs(t[:, 0, 1]) ** 2 + np.abs(t[:, 0, 3]) ** 2
    n2 = np.abs(t[:, 2, 1]) ** 2 + np.abs(t[:, 2, 3]) ** 2
    return n1, n2, flagged
