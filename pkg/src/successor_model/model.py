# src/successor_model/model.py

import dataclasses
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType

import numpy as np

from src.hilbert_core.operators import (
    DEFAULT_DENSE_CAP,
    DiagonalOperator,
    DimensionLimitError,
    IdentityOperator,
    LinearOperator,
    PhasePermutation,
    compose,
    compose_all,
    conjugate,
    identity,
)
from src.hilbert_core.predicates import operators_close, trace
from src.hilbert_core.states import StateVector, apply
from src.utils.logger import get_logger

DEFAULT_MAX_N = 10
CLASSIFY_TOL = 1e-8

logger = get_logger(__name__)


class OrderingError(RuntimeError):
    """The V family does not determine a unique successor chain a_1 … a_n."""


class UnclassifiableStateError(ValueError):
    """A state is not (within tolerance) a member of the model's orthogonal family."""


class Polarity(Enum):
    ALPHA = 0
    GAMMA = 1


@dataclass(frozen=True)
class ParameterSet:
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("Parameter set must contain at least one label")
        if len(set(labels)) != len(labels):
            raise ValueError(f"Parameter labels must be distinct, got {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def default(cls, n):
        return cls(tuple(f"a{j}" for j in range(1, n + 1)))

    @property
    def n(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self.labels


@dataclass(frozen=True)
class BitFunction:
    """
    Map from parameter labels to {0, 1}; 0 stands for α and 1 for γ.

    Stored as a sorted tuple of (label, bit) pairs so that instances compare and hash by value.
    """

    items: tuple

    def __post_init__(self):
        items = tuple(sorted(((label, int(bit)) for label, bit in dict(self.items).items()), key=lambda item: str(item[0])))
        for label, bit in items:
            if bit not in (0, 1):
                raise ValueError(f"Bit for {label} must be 0 or 1, got {bit}")
        object.__setattr__(self, "items", items)

    @classmethod
    def from_mapping(cls, values):
        return cls(tuple(values.items()))

    @classmethod
    def from_tuple(cls, bits, ordering):
        if len(bits) != len(ordering):
            raise ValueError(f"Expected {len(ordering)} bits, got {len(bits)}")
        return cls(tuple(zip(ordering, bits)))

    @classmethod
    def from_int(cls, value, ordering):
        if not 0 <= value < 2 ** len(ordering):
            raise ValueError(f"Value {value} does not fit in {len(ordering)} bits")
        return cls(tuple((label, (value >> j) & 1) for j, label in enumerate(ordering)))

    @property
    def values(self):
        return dict(self.items)

    def __getitem__(self, label):
        return self.values[label]

    def polarity(self, label):
        return Polarity(self[label])

    def as_tuple(self, ordering):
        values = self.values
        return tuple(values[label] for label in ordering)

    def to_int(self, ordering):
        values = self.values
        return sum(values[label] << j for j, label in enumerate(ordering))


@dataclass(frozen=True, eq=False)
class SuccessorModel:
    """
    Parameter set plus the V, P and U operator families.

    `family_basis` is the operator whose columns are the distinguished orthogonal
    family states in basis-index order (identity for the product model).
    `ordering` and `zero` stay unset until `prepare_model` derives them.
    """

    n: int
    params: ParameterSet
    V: MappingProxyType
    P: MappingProxyType
    U: MappingProxyType
    family_basis: LinearOperator
    kind: str = "product"
    ordering: tuple = None
    zero: StateVector = None

    def __post_init__(self):
        for field_name in ("V", "P", "U"):
            object.__setattr__(self, field_name, MappingProxyType(dict(getattr(self, field_name))))
        dim = 2**self.n
        for op in (*self.V.values(), *self.P.values(), *self.U.values(), self.family_basis):
            if op.dim != dim:
                raise ValueError(f"Operator of dim {op.dim} in a model of dim {dim}")

    @property
    def dim(self):
        return 2**self.n

    @property
    def labels(self):
        return self.params.labels

    def projector(self, label, polarity):
        return self.P[(label, Polarity(polarity))]

    def with_operators(self, V=None, P=None, U=None):
        """Copy with some operators replaced; derived ordering and zero are cleared."""
        return dataclasses.replace(
            self,
            V={**self.V, **(V or {})},
            P={**self.P, **(P or {})},
            U={**self.U, **(U or {})},
            ordering=None,
            zero=None,
        )


def _bit_column(dim, bit):
    return (np.arange(dim) >> bit) & 1


def build_product_model(n, labels=None, construction_order=None, max_n=DEFAULT_MAX_N):
    """
    Build the standard product-state model on one n-bit register.

    Args:
        n: Number of parameters (bits)
        labels: Labels for a_1 … a_n in value order; defaults to "a1" … "an"
        construction_order: Permutation of range(n) giving the order the labels are
            stored in the parameter set; the derived ordering must not depend on it
        max_n: Upper bound on n

    Returns:
        SuccessorModel: with ordering and zero state derived
    """
    if n < 1:
        err_msg = f"Model size n must be at least 1, got {n}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    if n > max_n:
        err_msg = f"Model size n={n} exceeds the single-register limit {max_n}"
        logger.error(err_msg)
        raise DimensionLimitError(err_msg)

    labels = tuple(labels) if labels is not None else ParameterSet.default(n).labels
    if len(labels) != n:
        raise ValueError(f"Expected {n} labels, got {len(labels)}")
    order = list(construction_order) if construction_order is not None else list(range(n))
    if sorted(order) != list(range(n)):
        raise ValueError(f"construction_order must be a permutation of range({n})")

    dim = 2**n
    indices = np.arange(dim)
    V, P, U = {}, {}, {}
    for j, label in enumerate(labels):
        gamma = _bit_column(dim, j)
        V[label] = PhasePermutation((indices + (1 << j)) % dim)
        P[(label, Polarity.GAMMA)] = DiagonalOperator(gamma)
        P[(label, Polarity.ALPHA)] = DiagonalOperator(1 - gamma)
        U[label] = PhasePermutation(indices ^ (1 << j))

    params = ParameterSet(tuple(labels[i] for i in order))
    model = SuccessorModel(n=n, params=params, V=V, P=P, U=U, family_basis=IdentityOperator(dim), kind="product")
    logger.debug(f"Built product model n={n} with construction order {params.labels}")
    return prepare_model(model)


def conjugate_model(model, unitary, kind="custom", cap=DEFAULT_DENSE_CAP):
    """Conjugate every V, P and U by `unitary`; the family basis is carried along."""
    V = {label: conjugate(op, unitary, cap) for label, op in model.V.items()}
    P = {key: conjugate(op, unitary, cap) for key, op in model.P.items()}
    U = {label: conjugate(op, unitary, cap) for label, op in model.U.items()}
    conjugated = SuccessorModel(
        n=model.n,
        params=model.params,
        V=V,
        P=P,
        U=U,
        family_basis=compose(unitary, model.family_basis),
        kind=kind,
    )
    logger.debug(f"Conjugated {model.kind} model n={model.n} into a {kind} model")
    return prepare_model(conjugated)


def prepare_model(model, tol=1e-10):
    ordering = derive_ordering(model, tol)
    prepared = dataclasses.replace(model, ordering=ordering)
    return dataclasses.replace(prepared, zero=zero_state(prepared, tol))


def derive_ordering(model, tol=1e-10):
    """
    Recover a_1 … a_n from the squaring chain of the V family.

    Raises:
        OrderingError: a square matches no family member, a successor or
            predecessor is not unique, or the chain does not cover every label
    """
    labels = model.params.labels
    ident = identity(model.dim)
    involutions = []
    successor = {}
    for a in labels:
        square = compose(model.V[a], model.V[a])
        if operators_close(square, ident, tol):
            involutions.append(a)
            continue
        matches = [b for b in labels if b != a and operators_close(square, model.V[b], tol)]
        if not matches:
            err_msg = f"chain link missing: (V_{a})^2 matches no operator of the family"
            logger.error(err_msg)
            raise OrderingError(err_msg)
        if len(matches) > 1:
            err_msg = f"successor of {a} is not unique: {matches}"
            logger.error(err_msg)
            raise OrderingError(err_msg)
        successor[a] = matches[0]

    if len(involutions) != 1:
        err_msg = f"expected exactly one label with (V_a)^2 = I, found {involutions}"
        logger.error(err_msg)
        raise OrderingError(err_msg)
    last = involutions[0]

    targets = list(successor.values())
    repeated = sorted({b for b in targets if targets.count(b) > 1})
    if repeated:
        err_msg = f"predecessor is not unique for {repeated}"
        logger.error(err_msg)
        raise OrderingError(err_msg)
    starts = [a for a in labels if a not in targets]
    if len(starts) != 1:
        err_msg = f"expected exactly one label without predecessor, found {starts}"
        logger.error(err_msg)
        raise OrderingError(err_msg)

    chain = [starts[0]]
    while chain[-1] != last:
        if chain[-1] not in successor or len(chain) > len(labels):
            err_msg = f"chain from {starts[0]} never reaches {last}: {chain}"
            logger.error(err_msg)
            raise OrderingError(err_msg)
        chain.append(successor[chain[-1]])
    if len(chain) != len(labels):
        err_msg = f"chain {chain} does not cover every label of {labels}"
        logger.error(err_msg)
        raise OrderingError(err_msg)
    return tuple(chain)


def _normalize_phase(vector):
    # First largest-magnitude amplitude is made real and positive
    pivot = vector[np.argmax(np.abs(vector) > np.abs(vector).max() - 1e-12)]
    return vector * (abs(pivot) / pivot)


def zero_state(model, tol=1e-10, cap=DEFAULT_DENSE_CAP):
    """
    The state fixed by every P_{a,α}.

    Read off as the normalized largest column of ∏_a P_{a,α}, which must be a
    rank-one projection.
    """
    projection = compose_all(*(model.projector(a, Polarity.ALPHA) for a in model.params.labels))
    rank = trace(projection, cap).real
    if abs(rank - 1.0) > 1e-6:
        err_msg = f"Product of the α projections has rank {rank:.3f}, expected 1"
        logger.error(err_msg)
        raise UnclassifiableStateError(err_msg)
    matrix = projection.to_dense(cap)
    norms = np.linalg.norm(matrix, axis=0)
    column = matrix[:, int(np.argmax(norms))]
    vector = _normalize_phase(column / np.linalg.norm(column))
    return StateVector(vector, tol=tol)


def classify_state(model, state, tol=CLASSIFY_TOL):
    """
    Return the bit function s with P_s·state = state.

    Each bit is decided by ‖P_{a,γ}·state‖² > 1/2 and then re-verified against `tol`.
    """
    values = {}
    for a in model.params.labels:
        gamma_image = apply(model.projector(a, Polarity.GAMMA), state)
        bit = 1 if gamma_image.norm() ** 2 > 0.5 else 0
        fixed = gamma_image if bit else apply(model.projector(a, Polarity.ALPHA), state)
        deviation = float(np.max(np.abs(fixed.amps - state.amps)))
        if deviation > tol:
            err_msg = f"State is not an eigenstate of P_({a},{Polarity(bit).name.lower()}): deviation {deviation:.3e}"
            logger.error(err_msg)
            raise UnclassifiableStateError(err_msg)
        values[a] = bit
    return BitFunction.from_mapping(values)


def state_from_bits(model, bits):
    """∏_{a: s(a)=1} V_a applied to the zero state."""
    zero = model.zero if model.zero is not None else zero_state(model)
    factors = [model.V[a] for a in model.params.labels if bits[a] == 1]
    if not factors:
        return zero
    return StateVector(compose_all(*factors).matvec(zero.amps))


def number_state(model, value):
    ordering = model.ordering if model.ordering is not None else derive_ordering(model)
    return state_from_bits(model, BitFunction.from_int(value, ordering))


def family_states(model, cap=DEFAULT_DENSE_CAP):
    """Dense matrix whose column x is the family state with basis label x."""
    return model.family_basis.to_dense(cap)


def family_values(model, cap=DEFAULT_DENSE_CAP, tol=CLASSIFY_TOL):
    """Number carried by each family state, indexed by family label; `tol` goes to `classify_state`."""
    columns = family_states(model, cap)
    ordering = model.ordering if model.ordering is not None else derive_ordering(model)
    values = np.empty(model.dim, dtype=np.int64)
    for index in range(model.dim):
        values[index] = classify_state(model, StateVector(columns[:, index]), tol).to_int(ordering)
    return values
