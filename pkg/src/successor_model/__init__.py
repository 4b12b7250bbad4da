# src/successor_model/__init__.py

from .model import (
    BitFunction,
    OrderingError,
    ParameterSet,
    Polarity,
    SuccessorModel,
    UnclassifiableStateError,
    build_product_model,
    classify_state,
    conjugate_model,
    derive_ordering,
    family_states,
    family_values,
    number_state,
    prepare_model,
    state_from_bits,
    zero_state,
)
from .properties import (
    PropertyReport,
    PropertyResult,
    check_all_properties,
    check_projection_properties,
    check_recursion_property,
    check_successor_properties,
)

__all__ = [
    "BitFunction",
    "OrderingError",
    "ParameterSet",
    "Polarity",
    "SuccessorModel",
    "UnclassifiableStateError",
    "build_product_model",
    "classify_state",
    "conjugate_model",
    "derive_ordering",
    "family_states",
    "family_values",
    "number_state",
    "prepare_model",
    "state_from_bits",
    "zero_state",
    "PropertyReport",
    "PropertyResult",
    "check_all_properties",
    "check_projection_properties",
    "check_recursion_property",
    "check_successor_properties",
]
