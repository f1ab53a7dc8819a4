"""Quasi-expectation operators for exchangeable dice and bosonic quantum systems."""

from .dice import (
    ExchangeableProbability,
    QuasiMomentVector,
    SignedMeasure,
    check_exchangeable,
    convergence_sweep,
    exchangeable_to_counts,
    lower_prevision,
    mixture_probability,
    represent_signed,
    signed_mixture_probability,
)
from .linalg import hermitian_eigen, is_psd, kron, min_eigenvalue, partial_trace, trace_product
from .lp import LinearProgram, LpSolution, solve
from .quantum import (
    DensityMatrix,
    PureStateEnsemble,
    SymmetricIsometry,
    Witness,
    bose_constraint_check,
    example_witness,
    expectation,
    gleason_probabilities,
    hierarchy_sweep,
    hierarchy_value,
    moment_matrix,
    power_symmetry_equivalence,
    product_observable,
    schmidt_diagnosis,
    symmetric_isometry,
    symmetrizer,
    witness_polynomial,
)
from .simplex import (
    SimplexPolynomial,
    bernstein_coefficients,
    enumerate_multiindices,
    evaluate,
    homogenize,
    multinomial,
    parse_polynomial,
)

__version__ = "0.1.0"
