"""Variance bounds for unitary operators: split-subset, fine-grained, and
cross-term lower bounds on products of unitary variances, with the supporting
moment machinery, built-in worked examples, and randomized self-checks.
"""

from .bounds import (
    BoundSet,
    HeuristicBound,
    SubsetSelection,
    best_split_bound,
    best_split_bound_overall,
    bound_report,
    correlation_bound,
    fine_grained_bound,
    fine_grained_sequence,
    geometric_mean_bound,
    gram_matrix,
    greedy_split_bound,
    paired_cross_bound,
    split_bound,
    split_bound_blend,
    triple_correlation_bound,
    variance_product,
)
from .errors import (
    BlochVectorTooLong,
    DimensionMismatch,
    DimensionTooSmall,
    IncompatibleDimension,
    IndexOutOfRange,
    InvalidDensityMatrix,
    InvalidSubset,
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotUnitary,
    SearchSpaceTooLarge,
    UnknownExample,
    UurError,
    WeightOutOfRange,
)
from .linalg import (
    EigDecomposition,
    hermitian_eig,
    is_unitary,
    kron,
    partial_trace,
    psd_sqrt,
    unvec,
    vec,
)
from .moments import (
    DeltaVector,
    DensityMatrix,
    ModulusPair,
    PureState,
    bloch_density,
    correlation,
    delta_vector,
    expectation,
    lift,
    modulus_pair,
    purify,
    variance_mixed,
    variance_pure,
)
from .sampling import random_density, random_state, random_unitary, trial_generator
from .scenarios import (
    Example1Reference,
    Scenario,
    clock_operator,
    example1_reference,
    scenario,
    shift_operator,
    theta_grid,
)
from .selfcheck import SuiteResult, run_all

__version__ = "0.1.0"

__all__ = [
    "BlochVectorTooLong",
    "BoundSet",
    "DeltaVector",
    "DensityMatrix",
    "DimensionMismatch",
    "DimensionTooSmall",
    "EigDecomposition",
    "Example1Reference",
    "HeuristicBound",
    "IncompatibleDimension",
    "IndexOutOfRange",
    "InvalidDensityMatrix",
    "InvalidSubset",
    "ModulusPair",
    "NoConvergence",
    "NotHermitian",
    "NotPSD",
    "NotUnitary",
    "PureState",
    "Scenario",
    "SearchSpaceTooLarge",
    "SubsetSelection",
    "SuiteResult",
    "UnknownExample",
    "UurError",
    "WeightOutOfRange",
    "best_split_bound",
    "best_split_bound_overall",
    "bloch_density",
    "bound_report",
    "clock_operator",
    "example1_reference",
    "correlation",
    "correlation_bound",
    "delta_vector",
    "expectation",
    "fine_grained_bound",
    "fine_grained_sequence",
    "geometric_mean_bound",
    "gram_matrix",
    "greedy_split_bound",
    "hermitian_eig",
    "is_unitary",
    "kron",
    "lift",
    "modulus_pair",
    "paired_cross_bound",
    "partial_trace",
    "psd_sqrt",
    "purify",
    "random_density",
    "random_state",
    "random_unitary",
    "scenario",
    "shift_operator",
    "split_bound",
    "split_bound_blend",
    "theta_grid",
    "trial_generator",
    "triple_correlation_bound",
    "unvec",
    "variance_mixed",
    "variance_product",
    "variance_pure",
    "vec",
    "__version__",
]
