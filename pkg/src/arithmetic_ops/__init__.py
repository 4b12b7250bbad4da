# src/arithmetic_ops/__init__.py

from .addition import addition_alternate, addition_factors, build_addition, controlled_successor
from .doubling import ClosedFormResult, build_doubling, doubled_bits, doubling_power_closed_form
from .multiplication import build_multiplication_triple, build_multiplication_unitary
from .oracles import FamilyCodec, OracleResult, evaluate, verify_addition, verify_against_oracle, verify_multiplication, verify_unitary_on_family
from .registers import (
    ArithmeticOperator,
    RegisterLayout,
    UnverifiedModelError,
    conjugate_arithmetic,
    embed,
    register_permutation,
    require_verified,
    swap_registers,
)

__all__ = [
    "addition_alternate",
    "addition_factors",
    "build_addition",
    "controlled_successor",
    "ClosedFormResult",
    "build_doubling",
    "doubled_bits",
    "doubling_power_closed_form",
    "build_multiplication_triple",
    "build_multiplication_unitary",
    "FamilyCodec",
    "OracleResult",
    "evaluate",
    "verify_addition",
    "verify_against_oracle",
    "verify_multiplication",
    "verify_unitary_on_family",
    "ArithmeticOperator",
    "RegisterLayout",
    "UnverifiedModelError",
    "conjugate_arithmetic",
    "embed",
    "register_permutation",
    "require_verified",
    "swap_registers",
]
