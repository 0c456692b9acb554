"""Exact Gaussian dynamics and entanglement of two quantum Brownian oscillators
sharing a common 1-D field bath."""

__version__ = "0.1.0"

from .errors import (AsymmetricBlocks, ConfigError, NegativeDiscriminant,
                     ParameterError, QBMError, QuadratureNotConverged,
                     SingularCovariance)
from .model import (ETA, GAMMA, SystemParams, apply_mirror, check_covariance,
                    two_mode_squeezed_covariance, wigner_density)
from .dynamics import evolution_matrix, mode_g0, mode_g1, mode_g2
from .bath import response_transform, sigma_matrix, sigma_oracle
from .entanglement import (CanonicalForm, EntanglementReport, SymplecticInvariants,
                           block_determinants, canonical_form, entanglement_report,
                           negativity_measures, ppt_spectrum, separability_test,
                           symplectic_invariants, symplectic_spectrum,
                           williamson_spectrum)
from .harness import (SweepConfig, SweepResult, emit_csv, emit_svg,
                      evolve_covariance, figure_bundles, run_sweep)
from .kernels import BACKEND
