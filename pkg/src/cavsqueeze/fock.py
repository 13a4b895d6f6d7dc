"""Truncated-Fock models of the elimination cascade, brute force.

The cascade runs from the full four-level interaction Hamiltonian down
to the quadratic effective model on the two cavity modes:

``FULL``       four levels, both cavity couplings and both classical
               drives, each oscillating at its own detuning;
``RAMAN``      levels a and b eliminated, leaving a two-photon
               flip-flop between c and d with residual two-photon
               phases, plus stark shifts;
``ROTATED``    same physics in the rotating frame that gathers the
               residual phases into a single two-photon mismatch;
``SECOND``     the flip-flop eliminated as well, leaving a block
               diagonal quadratic form on the c and d sectors;
``EFFECTIVE``  the d-sector quadratic Hamiltonian alone (the constant
               dropped in that last restriction is
               :func:`cavsqueeze.params.dropped_energy_offset`).

All stages are represented on the common basis
|level> x |n1> x |n2| (levels ordered a, b, c, d; photon numbers up to
the per-mode cutoff) so states from different stages can be overlapped
directly.  ``FULL`` and ``RAMAN`` evolve in the bare interaction frame;
the later stages differ from them by the diagonal frame rotation
generated by :func:`frame_generator_diagonal`, which
:func:`to_common_frame` applies before any cross-stage overlap.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sparse

from .kernels import PhasedTerms, propagate
from .params import EffectiveParams, SystemParams, derive_effective, raman_couplings

LEVELS = "abcd"
NUM_LEVELS = 4
NORM_DRIFT_LIMIT = 1e-8
BOUNDARY_LIMIT = 1e-8
MAX_STEP_PER_PERIOD = 0.01  # h_max = this over the fastest term frequency


class CutoffError(RuntimeError):
    """Truncation boundary captured real population; enlarge the cutoffs."""


class NormDriftError(RuntimeError):
    """Integrator lost unitarity beyond the accepted tolerance."""


class Stage(str, enum.Enum):
    FULL = "full"
    RAMAN = "raman"
    ROTATED = "rotated"
    SECOND = "second"
    EFFECTIVE = "effective"


ROTATED_FRAME_STAGES = (Stage.ROTATED, Stage.SECOND, Stage.EFFECTIVE)


def default_cutoff(eps: complex) -> int:
    """Photon-number cutoff comfortably above a coherent state's tail."""
    a = abs(eps)
    return int(math.ceil(a * a + 6.0 * a + 10.0))


def _destroy(dim: int) -> sparse.csr_matrix:
    return sparse.diags(np.sqrt(np.arange(1, dim)), 1).tocsr()


def _level_op(i: int, j: int) -> sparse.csr_matrix:
    m = sparse.lil_matrix((NUM_LEVELS, NUM_LEVELS))
    m[i, j] = 1.0
    return m.tocsr()


@dataclass(frozen=True)
class ModeOperators:
    """Shared operators on the level x Fock x Fock product space."""

    cutoff1: int
    cutoff2: int
    a1: sparse.csr_matrix
    a2: sparse.csr_matrix
    n1: sparse.csr_matrix
    n2: sparse.csr_matrix

    @property
    def dim(self) -> int:
        return NUM_LEVELS * (self.cutoff1 + 1) * (self.cutoff2 + 1)

    def atom(self, i: int, j: int) -> sparse.csr_matrix:
        eye1 = sparse.identity(self.cutoff1 + 1)
        eye2 = sparse.identity(self.cutoff2 + 1)
        return sparse.kron(sparse.kron(_level_op(i, j), eye1), eye2).tocsr()


def mode_operators(cutoff1: int, cutoff2: int) -> ModeOperators:
    d1, d2 = cutoff1 + 1, cutoff2 + 1
    eye_a = sparse.identity(NUM_LEVELS)
    eye1 = sparse.identity(d1)
    eye2 = sparse.identity(d2)
    a1 = sparse.kron(sparse.kron(eye_a, _destroy(d1)), eye2).tocsr()
    a2 = sparse.kron(sparse.kron(eye_a, eye1), _destroy(d2)).tocsr()
    return ModeOperators(cutoff1=cutoff1, cutoff2=cutoff2, a1=a1, a2=a2,
                         n1=(a1.getH() @ a1).tocsr(), n2=(a2.getH() @ a2).tocsr())


def _with_conjugates(pairs) -> list:
    terms = []
    for freq, mat in pairs:
        mat = mat.tocsr()
        terms.append((freq, mat))
        terms.append((-freq, mat.getH().tocsr()))
    return terms


def stage_terms(params: SystemParams, stage: Stage, ops: ModeOperators):
    """Phased-term decomposition of one cascade stage.

    Terms are (freq, matrix) with H(t) = sum exp(-i freq t) matrix;
    every oscillating term is paired with its conjugate so H(t) is
    Hermitian by construction.
    """
    p = params
    eff = derive_effective(p)
    la, lb, lc, ld = range(NUM_LEVELS)
    c13, c24 = raman_couplings(p, eff)
    half = (eff.delta_s1 + eff.delta_s2) / 2.0
    proj_c, proj_d = ops.atom(lc, lc), ops.atom(ld, ld)
    stark_c = (abs(p.g1) ** 2 / p.delta1) * (proj_c @ ops.n1)
    stark_d = (abs(p.g2) ** 2 / p.delta2) * (proj_d @ ops.n2)

    if stage == Stage.FULL:
        return _with_conjugates([
            (p.delta1, p.g1 * (ops.atom(la, lc) @ ops.a1)),
            (p.delta2, p.g2 * (ops.atom(lb, ld) @ ops.a2)),
            (p.delta3, p.omega3 * ops.atom(la, ld)),
            (p.delta4, p.omega4 * ops.atom(lb, lc)),
        ])

    if stage == Stage.RAMAN:
        static = (stark_c + (abs(p.omega4) ** 2 / p.delta4) * proj_c
                  + stark_d + (abs(p.omega3) ** 2 / p.delta3) * proj_d)
        flip = ops.atom(ld, lc)
        return [(0.0, static.tocsr())] + _with_conjugates([
            (-eff.delta_s1, c13 * (flip @ ops.a1)),
            (eff.delta_s2, c24 * (flip @ ops.a2.getH())),
        ])

    if stage == Stage.ROTATED:
        static = -half * (ops.n1 + ops.n2) + stark_c + stark_d
        flip_pair = ops.atom(ld, lc) @ (c13 * ops.a1 + c24 * ops.a2.getH())
        return [(0.0, static.tocsr())] + _with_conjugates([
            (-eff.delta, flip_pair),
        ])

    if stage == Stage.SECOND:
        lower = (c13 * ops.a1 + c24 * ops.a2.getH()).tocsr()
        static = (-half * (ops.n1 + ops.n2) + stark_c + stark_d
                  + (1.0 / eff.delta) * (proj_d @ lower @ lower.getH())
                  - (1.0 / eff.delta) * (proj_c @ lower.getH() @ lower))
        return [(0.0, static.tocsr())]

    if stage == Stage.EFFECTIVE:
        pair = effective_field_hamiltonian(eff, ops.cutoff1, ops.cutoff2)
        eye1 = sparse.identity(ops.cutoff1 + 1)
        eye2 = sparse.identity(ops.cutoff2 + 1)
        lifted = sparse.kron(_level_op(ld, ld),
                             sparse.kron(eye1, eye2) @ sparse.csr_matrix(pair))
        return [(0.0, lifted.tocsr())]

    raise ValueError(f"unknown stage {stage!r}")


def effective_field_hamiltonian(eff: EffectiveParams, cutoff1: int,
                                cutoff2: int) -> sparse.csr_matrix:
    """The quadratic effective Hamiltonian on the bare two-mode space."""
    d1, d2 = cutoff1 + 1, cutoff2 + 1
    a1 = sparse.kron(_destroy(d1), sparse.identity(d2)).tocsr()
    a2 = sparse.kron(sparse.identity(d1), _destroy(d2)).tocsr()
    n1 = (a1.getH() @ a1).tocsr()
    n2 = (a2.getH() @ a2).tocsr()
    pair = (a1 @ a2).tocsr()
    h = (eff.lambda1 * n1 + eff.lambda2 * n2
         + eff.eta * pair + eff.eta.conjugate() * pair.getH())
    return h.tocsr()


@dataclass(frozen=True)
class FockOperatorModel:
    """One cascade stage on a truncated product basis."""

    stage: Stage
    params: SystemParams
    cutoff1: int
    cutoff2: int
    terms: PhasedTerms

    @property
    def dim(self) -> int:
        return self.terms.dim

    def hamiltonian(self, t: float = 0.0) -> np.ndarray:
        """Dense H(t); intended for small cutoffs and invariant checks."""
        return self.terms.dense(t)

    def hermiticity_defect(self, times=(0.0, 0.37, 1.0, 2.5)) -> float:
        worst = 0.0
        for t in times:
            h = self.hamiltonian(t)
            worst = max(worst, float(np.max(np.abs(h - h.conj().T))))
        return worst


def build_model(params: SystemParams, stage: Stage | str,
                cutoff1: int, cutoff2: int) -> FockOperatorModel:
    stage = Stage(stage)
    ops = mode_operators(cutoff1, cutoff2)
    return FockOperatorModel(
        stage=stage, params=params, cutoff1=cutoff1, cutoff2=cutoff2,
        terms=PhasedTerms(stage_terms(params, stage, ops)))


@dataclass(frozen=True)
class InitialState:
    """Atom level ('a'..'d') and coherent amplitudes of the two modes."""

    level: str = "d"
    eps1: complex = 0j
    eps2: complex = 0j


def coherent_vector(dim: int, eps: complex) -> np.ndarray:
    """Truncated coherent state, renormalized on the truncated basis."""
    if eps == 0:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
        return v
    n = np.arange(dim)
    log_fact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim)))))
    v = np.exp(-abs(eps) ** 2 / 2.0 - 0.5 * log_fact) * np.power(complex(eps), n)
    return v / np.linalg.norm(v)


def product_state(initial: InitialState, cutoff1: int, cutoff2: int) -> np.ndarray:
    level = LEVELS.index(initial.level)
    atom = np.zeros(NUM_LEVELS, dtype=complex)
    atom[level] = 1.0
    return np.kron(atom, np.kron(coherent_vector(cutoff1 + 1, initial.eps1),
                                 coherent_vector(cutoff2 + 1, initial.eps2)))


def embed_field_state(field_psi: np.ndarray, level: str,
                      cutoff1: int, cutoff2: int) -> np.ndarray:
    atom = np.zeros(NUM_LEVELS, dtype=complex)
    atom[LEVELS.index(level)] = 1.0
    return np.kron(atom, field_psi)


def frame_generator_diagonal(params: SystemParams, cutoff1: int,
                             cutoff2: int) -> np.ndarray:
    """Diagonal of the frame rotation generator separating RAMAN from
    ROTATED: stark scalars on c and d plus the mean two-photon detuning
    times the total photon number."""
    eff = derive_effective(params)
    half = (eff.delta_s1 + eff.delta_s2) / 2.0
    d1, d2 = cutoff1 + 1, cutoff2 + 1
    diag = np.zeros((NUM_LEVELS, d1, d2))
    diag[LEVELS.index("c")] += abs(params.omega4) ** 2 / params.delta4
    diag[LEVELS.index("d")] += abs(params.omega3) ** 2 / params.delta3
    n1 = np.arange(d1)[None, :, None]
    n2 = np.arange(d2)[None, None, :]
    diag = diag + half * (n1 + n2)
    return diag.reshape(-1)


def to_common_frame(stage: Stage, psi: np.ndarray, tau: float,
                    params: SystemParams, cutoff1: int, cutoff2: int) -> np.ndarray:
    """Map a stage's state at time tau into the rotated frame shared by
    the later stages, so cross-stage overlaps compare like with like."""
    if Stage(stage) in ROTATED_FRAME_STAGES:
        return psi
    phase = np.exp(1j * tau * frame_generator_diagonal(params, cutoff1, cutoff2))
    return phase * psi


def boundary_population(psi: np.ndarray, cutoff1: int, cutoff2: int) -> float:
    blocks = np.abs(psi.reshape(NUM_LEVELS, cutoff1 + 1, cutoff2 + 1)) ** 2
    return float(blocks[:, cutoff1, :].sum() + blocks[:, :, cutoff2].sum()
                 - blocks[:, cutoff1, cutoff2].sum())


def level_populations(psi: np.ndarray, cutoff1: int, cutoff2: int) -> np.ndarray:
    blocks = np.abs(psi.reshape(NUM_LEVELS, -1)) ** 2
    return blocks.sum(axis=1)


def fock_evolve(model: FockOperatorModel, initial: InitialState, tau: float,
                dt: float | None = None, rtol: float = 1e-10,
                atol: float = 1e-12, backend: str | None = None):
    """Integrate one stage from a coherent product state for time tau.

    ``dt`` caps the step size; by default it resolves the fastest term
    phase of the stage (MAX_STEP_PER_PERIOD over the top frequency),
    with no cap for static stages where error control alone suffices.
    Raises :class:`NormDriftError` on unitarity loss and
    :class:`CutoffError` when the truncation boundary holds more than
    ``BOUNDARY_LIMIT`` population at the end.
    """
    if dt is None:
        top = model.terms.max_frequency
        dt = MAX_STEP_PER_PERIOD / top if top > 0 else math.inf
    psi0 = product_state(initial, model.cutoff1, model.cutoff2)
    psi, stats = propagate(model.terms, psi0, tau, rtol=rtol, atol=atol,
                           h_max=dt, backend=backend)
    if stats["max_norm_drift"] > NORM_DRIFT_LIMIT:
        raise NormDriftError(
            f"norm drift {stats['max_norm_drift']:.3e} exceeds "
            f"{NORM_DRIFT_LIMIT:.0e}")
    leak = boundary_population(psi, model.cutoff1, model.cutoff2)
    if leak > BOUNDARY_LIMIT:
        raise CutoffError(
            f"boundary population {leak:.3e} exceeds {BOUNDARY_LIMIT:.0e}; "
            f"increase the Fock cutoffs beyond "
            f"({model.cutoff1}, {model.cutoff2})")
    return psi, stats


def stage_fidelity(params: SystemParams, stage_a: Stage | str,
                   stage_b: Stage | str, initial: InitialState, tau: float,
                   cutoff1: int | None = None, cutoff2: int | None = None,
                   backend: str | None = None) -> float:
    """|<psi_a|psi_b>|^2 between two stage evolutions at time tau.

    Both states are brought to the common rotated frame first.  States
    of the EFFECTIVE stage live on the d sector by construction, which
    realizes the |d> x field embedding for the overlap.
    """
    if cutoff1 is None:
        cutoff1 = default_cutoff(initial.eps1)
    if cutoff2 is None:
        cutoff2 = default_cutoff(initial.eps2)
    states = []
    for stage in (Stage(stage_a), Stage(stage_b)):
        model = build_model(params, stage, cutoff1, cutoff2)
        psi, _ = fock_evolve(model, initial, tau, backend=backend)
        states.append(to_common_frame(stage, psi, tau, params, cutoff1, cutoff2))
    return float(abs(np.vdot(states[0], states[1])) ** 2)
