"""Desk-scale laboratory for classical Lagrange interpolation.

Polynomial forms with barycentric evaluation, interpolation matrices,
Lebesgue functions and constants, Newton expansions and interpolating
basis verification, compact sets with one-sided lower porosity, and a
CLI that turns these into reproducible delimited reports.
"""

from .compactset import (
    CompactSet,
    IsolationFlags,
    PorosityEstimate,
    PorousVerdict,
    extent,
    gap_length,
    isolation_criterion,
    load_set,
    lower_porosity,
    make_cantor,
    make_geometric_set,
    save_set,
    strongly_lower_porous_check,
)
from .errors import DomainError, InputError, NumericalError
from .faber import (
    BasisCandidate,
    ChainReport,
    DividedDifferenceTable,
    InterpolationCheck,
    RecoveryResult,
    SumsEqualVerdict,
    check_interpolating,
    divided_differences,
    lagrange_basis,
    load_basis,
    newton_basis,
    newton_lagrange_equivalence,
    node_isolating_hat,
    partial_sum,
    partial_sums_equal,
    projection_chain_check,
    recover_nodes,
    rescale_basis,
    save_basis,
)
from .functions import SampledFunction, closed_form, default_suite, hat, polynomial, tabulated
from .lebesgue import (
    GrowthRow,
    LemmaCheck,
    ProfileRow,
    best_approx_upper_bound,
    convergence_profile,
    fundamental_values,
    growth_report,
    lagrange_interpolant,
    lebesgue_constant,
    lebesgue_function,
    lebesgue_lemma_check,
    lebesgue_sup_oracle,
    operator_norm_probe,
    uniform_error,
)
from .matrices import (
    InterpolationMatrix,
    NodeSequence,
    affine_transform,
    chebyshev_leja_sequence,
    chebyshev_matrix,
    chebyshev_row,
    equispaced_matrix,
    equispaced_row,
    is_nested,
    leja_order,
    load_matrix,
    load_node_sequence,
    nested_matrix,
    save_matrix,
    save_node_sequence,
    validate_matrix,
)
from .poly import (
    BarycentricForm,
    MonomialForm,
    NewtonForm,
    PolynomialForm,
    barycentric_weights,
    degree,
    evaluate,
    to_monomial,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DomainError",
    "InputError",
    "NumericalError",
    "MonomialForm",
    "NewtonForm",
    "BarycentricForm",
    "PolynomialForm",
    "barycentric_weights",
    "evaluate",
    "to_monomial",
    "degree",
    "NodeSequence",
    "InterpolationMatrix",
    "chebyshev_row",
    "equispaced_row",
    "chebyshev_matrix",
    "equispaced_matrix",
    "nested_matrix",
    "validate_matrix",
    "is_nested",
    "affine_transform",
    "leja_order",
    "chebyshev_leja_sequence",
    "load_matrix",
    "save_matrix",
    "load_node_sequence",
    "save_node_sequence",
    "SampledFunction",
    "closed_form",
    "polynomial",
    "hat",
    "tabulated",
    "default_suite",
    "fundamental_values",
    "lagrange_interpolant",
    "lebesgue_function",
    "lebesgue_sup_oracle",
    "lebesgue_constant",
    "operator_norm_probe",
    "uniform_error",
    "best_approx_upper_bound",
    "lebesgue_lemma_check",
    "convergence_profile",
    "growth_report",
    "LemmaCheck",
    "ProfileRow",
    "GrowthRow",
    "DividedDifferenceTable",
    "divided_differences",
    "newton_basis",
    "lagrange_basis",
    "partial_sum",
    "BasisCandidate",
    "InterpolationCheck",
    "check_interpolating",
    "RecoveryResult",
    "recover_nodes",
    "rescale_basis",
    "SumsEqualVerdict",
    "partial_sums_equal",
    "ChainReport",
    "projection_chain_check",
    "newton_lagrange_equivalence",
    "node_isolating_hat",
    "load_basis",
    "save_basis",
    "CompactSet",
    "extent",
    "gap_length",
    "PorosityEstimate",
    "lower_porosity",
    "IsolationFlags",
    "isolation_criterion",
    "PorousVerdict",
    "strongly_lower_porous_check",
    "make_geometric_set",
    "make_cantor",
    "load_set",
    "save_set",
]
