"""Two-path qubit duality, variance bounds, and unsharp joint readout.

The package models a two-level system through its density matrix in the
reference basis, the complementary observables built from equal-weight
superpositions of that basis, and a meter entangled with the system through
a population-preserving coupling. Every quantity of interest has a closed
form here, and every closed form has at least one independent check: a grid
oracle for the fringe contrast, explicit matrix algebra behind the variance
bound, redundant routes to the minimal variance product, and sampling
oracles for the measurement statistics.
"""

from .duality import (
    DualityReport,
    duality_report,
    fringe_probability,
    predictability,
    predictability_of_b,
    visibility,
    visibility_of_b,
    visibility_oracle,
)
from .errors import (
    ContractViolationError,
    ParameterError,
    QudualError,
    SingularConfigurationError,
)
from .linalg import assert_hermitian, assert_unitary, hermitian_eig, kron, trace_norm
from .montecarlo import (
    SampleReport,
    sample_fringe,
    sample_sharp,
    sample_simultaneous,
)
from .simultaneous import (
    EntangledState,
    MeterProjectors,
    MinimumProductReport,
    distinguishability,
    entangle,
    entangled_visibility,
    estimate_a,
    estimate_b,
    meter_projectors,
    minimum_product_report,
    minimum_simultaneous_product,
    optimal_entanglement,
    simultaneous_product,
)
from .states import (
    ComplementaryFamily,
    DensityMatrix,
    Observable,
    beam_splitter,
    complementary_observable,
    complementary_triplet,
    density_from_params,
    phase_difference_realization,
    phase_shift,
    pure_state,
    symmetric_observable,
)
from .uncertainty import (
    IS_FAMILIES,
    IntelligentState,
    RobertsonReport,
    intelligent_state,
    is_residual,
    mean_var,
    normalized_product_bounds,
    robertson,
)
from .verify import SuiteResult, render_report, run_suites

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "QudualError",
    "ContractViolationError",
    "ParameterError",
    "SingularConfigurationError",
    # linear algebra
    "assert_hermitian",
    "assert_unitary",
    "hermitian_eig",
    "trace_norm",
    "kron",
    # states and observables
    "DensityMatrix",
    "Observable",
    "ComplementaryFamily",
    "density_from_params",
    "pure_state",
    "symmetric_observable",
    "complementary_observable",
    "complementary_triplet",
    "phase_difference_realization",
    "phase_shift",
    "beam_splitter",
    # duality
    "DualityReport",
    "duality_report",
    "predictability",
    "visibility",
    "fringe_probability",
    "visibility_oracle",
    "predictability_of_b",
    "visibility_of_b",
    # variance bounds
    "RobertsonReport",
    "robertson",
    "mean_var",
    "normalized_product_bounds",
    "IntelligentState",
    "IS_FAMILIES",
    "intelligent_state",
    "is_residual",
    # entangled readout
    "EntangledState",
    "entangle",
    "distinguishability",
    "entangled_visibility",
    "MeterProjectors",
    "meter_projectors",
    "estimate_a",
    "estimate_b",
    "simultaneous_product",
    "optimal_entanglement",
    "MinimumProductReport",
    "minimum_product_report",
    "minimum_simultaneous_product",
    # sampling oracles
    "SampleReport",
    "sample_sharp",
    "sample_fringe",
    "sample_simultaneous",
    # self checks
    "SuiteResult",
    "run_suites",
    "render_report",
]
