"""Adaptive Schrodinger propagation kernels, numba or pure numpy.

This is the package's hot loop: integrating psi' = -i H(t) psi on a
truncated Fock space, where H(t) is a sum of static sparse matrices
carrying oscillating scalar weights,

    H(t) = sum_m exp(-i freq_m t) A_m        (CSR matrices A_m).

The stepper is an embedded Dormand-Prince 4(5) pair with proportional
step control, a hard step-size cap (so the fastest phase is always
resolved) and running unitarity monitoring.

Two interchangeable implementations are provided:

* a numba ``@njit`` kernel operating on flattened CSR arrays, and
* a pure numpy/scipy fallback with identical stepping logic.

Selection: the ``CAVSQUEEZE_BACKEND`` environment variable, one of
``auto`` (default: numba when importable), ``numba`` or ``numpy``.
``benchmarks/bench_backends.py`` times one against the other.
"""

from __future__ import annotations

import os
import warnings

import numpy as np
import scipy.sparse as sparse

_ENV_VAR = "CAVSQUEEZE_BACKEND"

_requested = os.environ.get(_ENV_VAR, "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"{_ENV_VAR} must be one of auto|numba|numpy, got {_requested!r}")

if _requested in ("auto", "numba"):
    try:
        from numba import njit
        _HAVE_NUMBA = True
    except ImportError:
        _HAVE_NUMBA = False
        if _requested == "numba":
            raise RuntimeError(
                f"{_ENV_VAR}=numba but numba is not importable")
        warnings.warn("numba not importable; falling back to numpy kernels")
else:
    _HAVE_NUMBA = False

DEFAULT_BACKEND = "numba" if _HAVE_NUMBA else "numpy"

# Dormand-Prince 4(5) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = np.zeros((7, 7))
_A[1, 0] = 1 / 5
_A[2, :2] = (3 / 40, 9 / 40)
_A[3, :3] = (44 / 45, -56 / 15, 32 / 9)
_A[4, :4] = (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729)
_A[5, :5] = (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656)
_A[6, :6] = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_B5 = _A[6].copy()  # 5th-order weights (FSAL)
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
                -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - np.append(_B4[:6], _B4[6])

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1


class IntegrationError(RuntimeError):
    pass


class PhasedTerms:
    """Hamiltonian as phased CSR terms, holding both layouts.

    ``mats`` are scipy CSR matrices for the numpy path; the flattened
    (freqs, data, indices, indptr) arrays feed the numba kernel.
    """

    def __init__(self, terms):
        self.terms = [(float(f), m.tocsr()) for f, m in terms]
        if not self.terms:
            raise ValueError("need at least one Hamiltonian term")
        self.dim = self.terms[0][1].shape[0]
        for _, m in self.terms:
            if m.shape != (self.dim, self.dim):
                raise ValueError("all terms must share one dimension")
        self.freqs = np.array([f for f, _ in self.terms])
        nterms = len(self.terms)
        self.indptr = np.zeros((nterms, self.dim + 1), dtype=np.int64)
        data_parts = []
        index_parts = []
        offset = 0
        for k, (_, m) in enumerate(self.terms):
            data_parts.append(m.data.astype(np.complex128))
            index_parts.append(m.indices.astype(np.int64))
            self.indptr[k] = m.indptr.astype(np.int64) + offset
            offset += m.nnz
        self.data = np.concatenate(data_parts) if offset else np.zeros(0, np.complex128)
        self.indices = np.concatenate(index_parts) if offset else np.zeros(0, np.int64)

    @property
    def max_frequency(self) -> float:
        return float(np.max(np.abs(self.freqs)))

    def dense(self, t: float) -> np.ndarray:
        """H(t) as a dense array, for small-dimension checks."""
        acc = np.zeros((self.dim, self.dim), dtype=complex)
        for f, m in self.terms:
            acc += np.exp(-1j * f * t) * m.toarray()
        return acc

    def apply(self, t: float, psi: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(psi)
        for f, m in self.terms:
            acc += np.exp(-1j * f * t) * (m @ psi)
        return acc


def _rhs_numpy(terms: PhasedTerms, t: float, psi: np.ndarray) -> np.ndarray:
    return -1j * terms.apply(t, psi)


def _propagate_numpy(terms: PhasedTerms, psi0, t_final, rtol, atol, h_max):
    t = 0.0
    y = psi0.astype(np.complex128, copy=True)
    norm0 = np.linalg.norm(y)
    h = min(h_max, t_final) if t_final > 0 else t_final
    k = np.zeros((7, y.size), dtype=np.complex128)
    k[0] = _rhs_numpy(terms, t, y)
    accepted = rejected = 0
    max_drift = 0.0
    while t < t_final:
        h = min(h, t_final - t)
        if h < 1e-14 * max(t_final, 1.0):
            return y, accepted, rejected, max_drift, STATUS_STEP_UNDERFLOW
        for s in range(1, 7):
            ys = y + h * (_A[s, :s] @ k[:s])
            k[s] = _rhs_numpy(terms, t + _C[s] * h, ys)
        y_new = y + h * (_B5 @ k)
        err_vec = h * (_E @ k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = np.sqrt(np.mean(np.abs(err_vec / scale) ** 2))
        if err <= 1.0:
            t += h
            y = y_new
            k[0] = k[6]  # FSAL
            accepted += 1
            max_drift = max(max_drift, abs(np.linalg.norm(y) - norm0))
        else:
            rejected += 1
        factor = 0.9 * (err ** -0.2) if err > 0 else 10.0
        h = min(h * min(10.0, max(0.2, factor)), h_max)
    return y, accepted, rejected, max_drift, STATUS_OK


if _HAVE_NUMBA:

    @njit(cache=True)
    def _apply_phased(freqs, data, indices, indptr, t, psi, out):
        out[:] = 0.0
        for m in range(freqs.shape[0]):
            w = np.exp(-1j * freqs[m] * t)
            for i in range(psi.shape[0]):
                acc = 0.0 + 0.0j
                for p in range(indptr[m, i], indptr[m, i + 1]):
                    acc += data[p] * psi[indices[p]]
                out[i] += w * acc
        for i in range(psi.shape[0]):
            out[i] *= -1j

    @njit(cache=True)
    def _propagate_numba_impl(freqs, data, indices, indptr, psi0, t_final,
                              rtol, atol, h_max, a_tab, c_tab, b5, e_tab):
        n = psi0.shape[0]
        y = psi0.copy()
        norm0 = np.sqrt(np.abs(np.vdot(y, y)).real)
        t = 0.0
        h = h_max if h_max < t_final else t_final
        k = np.zeros((7, n), dtype=np.complex128)
        ys = np.zeros(n, dtype=np.complex128)
        y_new = np.zeros(n, dtype=np.complex128)
        _apply_phased(freqs, data, indices, indptr, 0.0, y, k[0])
        accepted = 0
        rejected = 0
        max_drift = 0.0
        status = STATUS_OK
        while t < t_final:
            if t_final - t < h:
                h = t_final - t
            if h < 1e-14 * max(t_final, 1.0):
                status = STATUS_STEP_UNDERFLOW
                break
            for s in range(1, 7):
                for i in range(n):
                    acc = 0.0 + 0.0j
                    for j in range(s):
                        acc += a_tab[s, j] * k[j, i]
                    ys[i] = y[i] + h * acc
                _apply_phased(freqs, data, indices, indptr,
                              t + c_tab[s] * h, ys, k[s])
            err_sq = 0.0
            for i in range(n):
                acc = 0.0 + 0.0j
                err_c = 0.0 + 0.0j
                for j in range(7):
                    acc += b5[j] * k[j, i]
                    err_c += e_tab[j] * k[j, i]
                y_new[i] = y[i] + h * acc
                ay = abs(y[i])
                ayn = abs(y_new[i])
                scale = atol + rtol * (ay if ay > ayn else ayn)
                q = abs(h * err_c) / scale
                err_sq += q * q
            err = np.sqrt(err_sq / n)
            if err <= 1.0:
                t += h
                y[:] = y_new
                k[0, :] = k[6, :]
                accepted += 1
                norm = np.sqrt(np.abs(np.vdot(y, y)).real)
                drift = abs(norm - norm0)
                if drift > max_drift:
                    max_drift = drift
            else:
                rejected += 1
            factor = 10.0 if err == 0.0 else 0.9 * err ** -0.2
            if factor > 10.0:
                factor = 10.0
            elif factor < 0.2:
                factor = 0.2
            h = h * factor
            if h > h_max:
                h = h_max
        return y, accepted, rejected, max_drift, status

    def _propagate_numba(terms: PhasedTerms, psi0, t_final, rtol, atol, h_max):
        return _propagate_numba_impl(
            terms.freqs, terms.data, terms.indices, terms.indptr,
            psi0.astype(np.complex128), float(t_final), float(rtol),
            float(atol), float(h_max), _A, _C, _B5, _E)
else:

    def _propagate_numba(terms, psi0, t_final, rtol, atol, h_max):
        raise RuntimeError("numba backend requested but numba is unavailable")


def propagate(terms, psi0, t_final, rtol=1e-10, atol=1e-12, h_max=np.inf,
              backend: str | None = None):
    """Integrate psi' = -i H(t) psi from t = 0 to ``t_final``.

    ``terms`` is a :class:`PhasedTerms` or an iterable of (freq, csr)
    pairs.  Returns (psi, stats) where stats is a dict with the step
    counts and the maximum norm drift seen along the trajectory.
    """
    if not isinstance(terms, PhasedTerms):
        terms = PhasedTerms(terms)
    if backend is None:
        backend = DEFAULT_BACKEND
    if backend == "numba":
        runner = _propagate_numba
    elif backend == "numpy":
        runner = _propagate_numpy
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if t_final == 0.0:
        return psi0.astype(np.complex128, copy=True), {
            "accepted": 0, "rejected": 0, "max_norm_drift": 0.0,
            "backend": backend}
    if not np.isfinite(h_max):
        h_max = float(t_final)
    psi, accepted, rejected, max_drift, status = runner(
        terms, np.asarray(psi0), float(t_final), rtol, atol, float(h_max))
    if status == STATUS_STEP_UNDERFLOW:
        raise IntegrationError("step size underflow during propagation")
    return psi, {"accepted": int(accepted), "rejected": int(rejected),
                 "max_norm_drift": float(max_drift), "backend": backend}
