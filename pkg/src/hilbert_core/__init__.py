# src/hilbert_core/__init__.py

from .operators import (
    DEFAULT_DENSE_CAP,
    DEFAULT_MAX_DIM,
    DenseOperator,
    DiagonalOperator,
    DimensionLimitError,
    DimensionMismatchError,
    FactoredOperator,
    IdentityOperator,
    KroneckerOperator,
    LinearOperator,
    MonomialOperator,
    PhasePermutation,
    SumOperator,
    adjoint,
    compose,
    compose_all,
    conjugate,
    identity,
    monomial,
    power,
    tensor_all,
    tensor_op,
)
from .predicates import (
    Bipartition,
    as_structured,
    commutes,
    is_projection,
    is_unitary,
    monomial_from_dense,
    operators_close,
    schmidt_coefficients,
    schmidt_rank,
    single_site_cuts,
    trace,
)
from .states import StateVector, apply, basis_state, gram_matrix, inner, states_close, tensor_state

__all__ = [
    "DEFAULT_DENSE_CAP",
    "DEFAULT_MAX_DIM",
    "DenseOperator",
    "DiagonalOperator",
    "DimensionLimitError",
    "DimensionMismatchError",
    "FactoredOperator",
    "IdentityOperator",
    "KroneckerOperator",
    "LinearOperator",
    "MonomialOperator",
    "PhasePermutation",
    "SumOperator",
    "adjoint",
    "compose",
    "compose_all",
    "conjugate",
    "identity",
    "monomial",
    "power",
    "tensor_all",
    "tensor_op",
    "Bipartition",
    "as_structured",
    "commutes",
    "is_projection",
    "is_unitary",
    "monomial_from_dense",
    "operators_close",
    "schmidt_coefficients",
    "schmidt_rank",
    "single_site_cuts",
    "trace",
    "StateVector",
    "apply",
    "basis_state",
    "gram_matrix",
    "inner",
    "states_close",
    "tensor_state",
]
