"""Fully entangled fraction of bipartite d x d states, exact and numerical."""

from .exact import (
    ConditionStatus,
    DecompositionCheckResult,
    SuperpositionBounds,
    closest_mes_pure,
    concurrence_lower_bound,
    concurrence_pure,
    decomposition_equality_check,
    fef_isotropic,
    fef_pure,
    fef_werner,
    geometric_measure_pure,
    mixture_upper_bound,
    negativity,
    superposition_bounds,
    superposition_bounds_multi,
    teleportation_fidelity,
    theorem2_bounds,
)
from .numeric import (
    FefResult,
    OptimizerConfig,
    deterministic_starts,
    fef_euclidean_gradient,
    fef_maximize,
    fef_objective,
    fef_oracle_grid_d2,
)
from .states import (
    DensityMatrix,
    PureState,
    SchmidtDecomposition,
    isotropic,
    max_entangled,
    permutation_mixture,
    random_density,
    random_pure,
    schmidt_decompose,
    validate_density,
    werner,
)

__version__ = "0.1.0"
