"""Two-mode output squeezing and entanglement from a single driven atom.

From raw four-level-atom and two-mode-cavity parameters the package
derives the effective pair-creation Hamiltonian, evaluates the
intracavity squeeze evolution, and produces the output-field squeezing,
entanglement and intensity spectra through input-output theory.  Every
closed form ships with an independent brute-force verification path
(frequency-domain matrix solves, Gaussian moment evolution, truncated
Fock integration of the full elimination cascade).
"""

from .evolution import (EvolutionInput, SqueezeDomainError, SqueezeResult,
                        horizon, squeeze_parameters)
from .gaussian import GaussianState, gaussian_evolve, symplectic_squeeze
from .oracle import spectrum_matrix_oracle
from .params import (EffectiveParams, ParameterError, SystemParams,
                     ValidityReport, check_validity, derive_effective)
from .spectra import (SpectrumCurve, analyze_spectrum, default_omega_grid,
                      displacements, displacements_steady, duan_entangled,
                      squeezing_spectrum)

__version__ = "0.1.0"

__all__ = [
    "EffectiveParams",
    "EvolutionInput",
    "GaussianState",
    "ParameterError",
    "SpectrumCurve",
    "SqueezeDomainError",
    "SqueezeResult",
    "SystemParams",
    "ValidityReport",
    "analyze_spectrum",
    "check_validity",
    "default_omega_grid",
    "derive_effective",
    "displacements",
    "displacements_steady",
    "duan_entangled",
    "gaussian_evolve",
    "horizon",
    "spectrum_matrix_oracle",
    "squeeze_parameters",
    "squeezing_spectrum",
    "symplectic_squeeze",
]
