# src/arithmetic_ops/registers.py

import weakref
from dataclasses import dataclass

import numpy as np

from src.hilbert_core.operators import (
    DEFAULT_MAX_DIM,
    DimensionLimitError,
    FactoredOperator,
    IdentityOperator,
    KroneckerOperator,
    PhasePermutation,
    compose_all,
    tensor_all,
)
from src.successor_model.properties import check_all_properties
from src.utils.logger import get_logger

logger = get_logger(__name__)

_verified_models = weakref.WeakSet()


class UnverifiedModelError(RuntimeError):
    """An arithmetic builder was handed a model that has not passed properties 1-12."""


@dataclass(frozen=True)
class RegisterLayout:
    """k registers of n bits; register 0 is the high-order index block."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError(f"Register layout needs k >= 1 and n >= 1, got k={self.k}, n={self.n}")

    @property
    def register_dim(self):
        return 2**self.n

    @property
    def dim(self):
        return 2 ** (self.k * self.n)

    def stride(self, register):
        return self.register_dim ** (self.k - 1 - register)

    def index(self, values):
        if len(values) != self.k:
            raise ValueError(f"Expected {self.k} register values, got {len(values)}")
        return sum(int(value) * self.stride(r) for r, value in enumerate(values))

    def digits(self, indices):
        """Per-register digits of an array of composite indices, shape (k, len(indices))."""
        indices = np.asarray(indices, dtype=np.int64)
        return np.stack([(indices // self.stride(r)) % self.register_dim for r in range(self.k)])

    def check(self, max_dim=DEFAULT_MAX_DIM):
        if self.dim > max_dim:
            err_msg = f"{self.k} registers of {self.n} bits need dim {self.dim}, above the maximum {max_dim}"
            logger.error(err_msg)
            raise DimensionLimitError(err_msg)
        return self


def register_permutation(layout, order):
    """
    Permutation that moves register order[i] into slot i.

    The returned operator maps the basis index of digits (d_0 … d_{k-1}) to the
    index of digits (d_order[0] … d_order[k-1]).
    """
    if sorted(order) != list(range(layout.k)):
        raise ValueError(f"Register order must be a permutation of range({layout.k}), got {order}")
    digits = layout.digits(np.arange(layout.dim))
    index_map = np.zeros(layout.dim, dtype=np.int64)
    for slot, register in enumerate(order):
        index_map += digits[register] * layout.stride(slot)
    return PhasePermutation(index_map)


def embed(op, registers, layout, max_dim=DEFAULT_MAX_DIM):
    """
    Lift an operator acting on `registers` (in its own tensor order) to the full layout.

    Contiguous ascending registers are padded with identities; other choices are
    routed through a register permutation.
    """
    registers = tuple(registers)
    layout.check(max_dim)
    if op.dim != layout.register_dim ** len(registers):
        raise ValueError(f"Operator of dim {op.dim} cannot act on {len(registers)} registers of {layout.n} bits")
    if len(set(registers)) != len(registers) or not all(0 <= r < layout.k for r in registers):
        raise ValueError(f"Invalid register selection {registers} for {layout.k} registers")

    first, last = registers[0], registers[-1]
    if list(registers) == list(range(first, last + 1)):
        parts = []
        if first > 0:
            parts.append(IdentityOperator(layout.register_dim**first))
        parts.append(op)
        if last < layout.k - 1:
            parts.append(IdentityOperator(layout.register_dim ** (layout.k - 1 - last)))
        return tensor_all(*parts, max_dim=max_dim) if len(parts) > 1 else op

    rest = [r for r in range(layout.k) if r not in registers]
    order = list(registers) + rest
    moved = KroneckerOperator(op, IdentityOperator(layout.register_dim ** len(rest)))
    route = register_permutation(layout, order)
    if moved.as_monomial() is not None:
        return compose_all(route.adjoint(), moved, route)
    return FactoredOperator((route.adjoint(), moved, route))


def swap_registers(layout, r1, r2):
    order = list(range(layout.k))
    order[r1], order[r2] = order[r2], order[r1]
    return register_permutation(layout, order)


@dataclass(frozen=True, eq=False)
class ArithmeticOperator:
    """
    A derived arithmetic operator with its factored form and elementary counts.

    `factor_count` counts elementary V applications with every controlled
    addition expanded (doublings count 1); `coarse_count` counts one step per
    controlled addition and per doubling.
    """

    name: str
    layout: RegisterLayout
    op: object
    factor_count: int
    coarse_count: int
    expanded_doubling_count: int = 0
    unitary: bool = True
    literal: bool = False

    @property
    def dim(self):
        return self.op.dim

    def count(self, granularity="fine"):
        return self.factor_count if granularity == "fine" else self.coarse_count

    def matmat(self, columns):
        return self.op.matmat(columns)


def require_verified(model, tol=1e-10):
    """
    Raise unless `model` has a derived ordering and passes properties 1-12.

    Verified models are remembered so repeated builds skip the check.
    """
    if model in _verified_models:
        return model
    if model.ordering is None or model.zero is None:
        err_msg = f"{model.kind} model n={model.n} has no derived ordering or zero state"
        logger.error(err_msg)
        raise UnverifiedModelError(err_msg)
    report = check_all_properties(model, tol)
    if not report.passed:
        err_msg = f"{model.kind} model n={model.n} fails properties {report.failed()}"
        logger.error(err_msg)
        raise UnverifiedModelError(err_msg)
    _verified_models.add(model)
    return model


def conjugate_arithmetic(arithmetic, unitary, max_dim=DEFAULT_MAX_DIM):
    """(U ⊗ … ⊗ U) · op · (U ⊗ … ⊗ U)† over every register of the layout."""
    lifted = tensor_all(*([unitary] * arithmetic.layout.k), max_dim=max_dim)
    return ArithmeticOperator(
        name=f"conjugated-{arithmetic.name}",
        layout=arithmetic.layout,
        op=FactoredOperator((lifted, arithmetic.op, lifted.adjoint())),
        factor_count=arithmetic.factor_count,
        coarse_count=arithmetic.coarse_count,
        expanded_doubling_count=arithmetic.expanded_doubling_count,
        unitary=arithmetic.unitary,
        literal=arithmetic.literal,
    )
