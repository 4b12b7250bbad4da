# src/arithmetic_ops/doubling.py

from dataclasses import dataclass

import numpy as np

from src.arithmetic_ops.registers import ArithmeticOperator, RegisterLayout, require_verified
from src.hilbert_core.operators import DEFAULT_DENSE_CAP, compose_all, monomial
from src.hilbert_core.states import StateVector
from src.successor_model.model import CLASSIFY_TOL, BitFunction, classify_state, family_states, family_values, state_from_bits
from src.utils.logger import get_logger

logger = get_logger(__name__)


def doubled_bits(model, bits):
    """Bits of 2β: the digit of a_j moves to a_{j+1}; the digit of a_n is dropped."""
    ordering = model.ordering
    values = {label: 0 for label in ordering}
    for j in range(len(ordering) - 1):
        values[ordering[j + 1]] = bits[ordering[j]]
    return BitFunction.from_mapping(values)


def build_doubling(model, cap=DEFAULT_DENSE_CAP, tol=CLASSIFY_TOL):
    """
    Doubling W: state(β) -> state(2β mod 2^n) on one register.

    Each family state is classified, its bits are shifted up one place and the
    result is rebuilt as ∏ V_{a_{j+1}} applied to zero. W is not injective
    (β and β + 2^(n-1) share an image), so it is not unitary.
    """
    require_verified(model)
    columns = family_states(model, cap)
    index_of_value = np.empty(model.dim, dtype=np.int64)
    values = family_values(model, cap, tol)
    index_of_value[values] = np.arange(model.dim)

    index_map = np.empty(model.dim, dtype=np.int64)
    for index in range(model.dim):
        bits = classify_state(model, StateVector(columns[:, index]), tol)
        image = state_from_bits(model, doubled_bits(model, bits))
        index_map[index] = index_of_value[classify_state(model, image, tol).to_int(model.ordering)]

    on_family = monomial(index_map)
    basis = model.family_basis
    op = compose_all(basis, on_family, basis.adjoint())
    logger.debug(f"Built doubling for {model.kind} model n={model.n}")
    return ArithmeticOperator(
        name="doubling",
        layout=RegisterLayout(1, model.n),
        op=op,
        factor_count=1,
        coarse_count=1,
        expanded_doubling_count=model.n - 1,
        unitary=False,
    )


@dataclass(frozen=True)
class ClosedFormResult:
    """
    Direct h-fold doubling next to the closed product formula for powers of W.

    `printed_at_h` evaluates the formula as written for W^h (factors V_{a_{j+h-1}});
    `printed_at_h_plus_1` evaluates the formula written for W^{h+1} (factors V_{a_{j+h}}).
    """

    bits: BitFunction
    printed_at_h: BitFunction
    printed_at_h_plus_1: BitFunction

    @property
    def matches_at_h(self):
        return self.printed_at_h == self.bits

    @property
    def matches_at_h_plus_1(self):
        return self.printed_at_h_plus_1 == self.bits


def _printed_closed_form(ordering, bits, exponent):
    # Formula written for W^{e}: ∏_{j <= n-e+1, s_j = 1} V_{a_{j+e-1}} applied to zero
    n = len(ordering)
    shift = exponent - 1
    values = {label: 0 for label in ordering}
    if shift < 0:
        return BitFunction.from_mapping({label: bits[label] for label in ordering})
    for j in range(n - shift):
        if bits[ordering[j]]:
            values[ordering[j + shift]] = 1
    return BitFunction.from_mapping(values)


def doubling_power_closed_form(model, h, bits):
    """
    Bits of 2^h·β mod 2^n, with the closed product formula evaluated alongside.

    Args:
        model: Model with a derived ordering
        h: Number of doublings, h >= 0
        bits: Bit function of β

    Returns:
        ClosedFormResult: `bits` is the direct result
    """
    if h < 0:
        raise ValueError(f"Doubling exponent must be nonnegative, got {h}")
    ordering = model.ordering
    value = bits.to_int(ordering)
    direct = BitFunction.from_int((value << h) % model.dim, ordering)
    return ClosedFormResult(
        bits=direct,
        printed_at_h=_printed_closed_form(ordering, bits, h),
        printed_at_h_plus_1=_printed_closed_form(ordering, bits, h + 1),
    )
