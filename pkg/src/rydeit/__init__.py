"""Susceptibilities of driven three-band bosonic ensembles.

Two solver paths for the least-decaying stationary state of the
non-Hermitian Hamiltonian: an exact sparse/dense diagonalization over the
full Fock basis, and a closed blockade-sector recursion that scales to
millions of particles. A sweep harness, figure presets, relaxation-rate
maps, and a self-validation suite sit on top.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DimensionError,
    ParameterError,
    RecursionSingularityError,
    RydeitError,
    SingularModeError,
    SweepSpecError,
)
from .params import ModelParams, basis_dimension
from .fock import FockBasis, FockState, enumerate_basis, probe_hop_matrix
from .modes import ModePair, mode_eigensystem, mode_pair, transfer_operator
from .recursion import TransferResult, stable_transfer, transfer_coefficients
from .state import (
    BlockadeState,
    blockade_susceptibility,
    chi_large_m,
    chi_single_particle,
    state_susceptibility,
    stationary_state,
)
from .exact import (
    ExactPoint,
    NhhMatrix,
    build_hamiltonian,
    exact_point,
    exact_profile,
    least_decaying_eigenpair,
    susceptibility,
)
from .relaxation import (
    RelaxationMap,
    RelaxationReport,
    relaxation_exponents,
    relaxation_map,
    relaxation_report,
)
from .sweep import (
    NullRefractionResult,
    SweepResult,
    SweepSpec,
    find_null_refraction,
    preset_specs,
    run_preset,
    run_sweep,
)
from .validation import ValidationReport, run_validation

__all__ = [
    "__version__",
    "BlockadeState",
    "ConvergenceError",
    "DimensionError",
    "ExactPoint",
    "FockBasis",
    "FockState",
    "ModelParams",
    "ModePair",
    "NhhMatrix",
    "NullRefractionResult",
    "ParameterError",
    "RecursionSingularityError",
    "RelaxationMap",
    "RelaxationReport",
    "RydeitError",
    "SingularModeError",
    "SweepSpecError",
    "SweepResult",
    "SweepSpec",
    "TransferResult",
    "ValidationReport",
    "basis_dimension",
    "blockade_susceptibility",
    "build_hamiltonian",
    "chi_large_m",
    "chi_single_particle",
    "enumerate_basis",
    "exact_point",
    "exact_profile",
    "find_null_refraction",
    "least_decaying_eigenpair",
    "mode_eigensystem",
    "mode_pair",
    "preset_specs",
    "probe_hop_matrix",
    "relaxation_exponents",
    "relaxation_map",
    "relaxation_report",
    "run_preset",
    "run_sweep",
    "run_validation",
    "state_susceptibility",
    "stationary_state",
    "susceptibility",
    "transfer_coefficients",
    "transfer_operator",
]
