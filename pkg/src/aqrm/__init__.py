"""Ground-state solvers for the asymmetric quantum Rabi model.

A closed-form variational ansatz (displaced, optionally squeezed, field states
entangled with non-orthogonal qubit states), an exact-diagonalization oracle in
a truncated Fock basis, a deterministic multi-start optimizer, and a sweep CLI.
"""

from ._kernels import BACKEND
from .closed_form import (
    atomic_population,
    correlation,
    energy,
    limit_energy_zero_coupling,
    limit_energy_zero_delta,
    normalization,
    observables,
    photon_number,
    polaron_coefficients,
    qubit_orientation,
)
from .exact import (
    ExactGroundState,
    FockTruncation,
    ansatz_state_vector,
    build_hamiltonian,
    converged_ground_state,
    exact_observables,
    fidelity,
    ground_state,
    parity_expectation,
)
from .optimize import (
    OptimizerConfig,
    SolveResult,
    SolveStatus,
    continuation_sweep,
    fixed_weight_solve,
    minimize_energy,
    stationarity_residual,
)
from .params import (
    CanonicalFlags,
    ModelParams,
    ObservableSet,
    VariationalParams,
    canonicalize,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CanonicalFlags",
    "ExactGroundState",
    "FockTruncation",
    "ModelParams",
    "ObservableSet",
    "OptimizerConfig",
    "SolveResult",
    "SolveStatus",
    "VariationalParams",
    "ansatz_state_vector",
    "atomic_population",
    "build_hamiltonian",
    "canonicalize",
    "continuation_sweep",
    "converged_ground_state",
    "correlation",
    "energy",
    "exact_observables",
    "fidelity",
    "fixed_weight_solve",
    "ground_state",
    "limit_energy_zero_coupling",
    "limit_energy_zero_delta",
    "minimize_energy",
    "normalization",
    "observables",
    "parity_expectation",
    "photon_number",
    "polaron_coefficients",
    "qubit_orientation",
    "stationarity_residual",
]
