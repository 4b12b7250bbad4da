# src/representations/encoding.py

from dataclasses import dataclass

import numpy as np

from src.arithmetic_ops.registers import conjugate_arithmetic
from src.hilbert_core.operators import DEFAULT_DENSE_CAP, identity
from src.hilbert_core.predicates import max_deviation
from src.hilbert_core.states import StateVector, gram_matrix
from src.representations.entanglement import build_entangling_unitary
from src.successor_model.model import CLASSIFY_TOL, build_product_model, conjugate_model, family_values, number_state
from src.utils.logger import get_logger

ORTHONORMAL_TOL = 1e-10
DECODE_FIDELITY = 0.999

logger = get_logger(__name__)


class DecodeError(ValueError):
    """A state is not close enough to any encoded number."""


@dataclass(frozen=True, eq=False)
class NumberEncoding:
    """
    Bijection between 0 … 2^n - 1 and orthonormal states of a successor model.

    `unitary` is the operator that carries the product encoding onto this one
    (identity for the product encoding).
    """

    n: int
    kind: str
    states: tuple
    model: object
    unitary: object
    value_of_label: np.ndarray

    @property
    def dim(self):
        return 2**self.n

    def table(self):
        """Matrix whose column k is the state encoding k."""
        return np.stack([state.amps for state in self.states], axis=1)


def build_model_encoding(model, kind="custom", unitary=None, tol=ORTHONORMAL_TOL, classify_tol=CLASSIFY_TOL):
    """
    Encode number k as ∏_{bits of k} V_a applied to the zero state of `model`.

    Raises:
        ValueError: the resulting states are not orthonormal
    """
    states = tuple(number_state(model, k) for k in range(model.dim))
    deviation = float(np.max(np.abs(gram_matrix(states) - np.eye(model.dim))))
    if deviation > tol:
        err_msg = f"{kind} encoding n={model.n} is not orthonormal (Gram deviation {deviation:.3e})"
        logger.error(err_msg)
        raise ValueError(err_msg)
    logger.debug(f"Built {kind} encoding n={model.n}")
    return NumberEncoding(
        n=model.n,
        kind=kind,
        states=states,
        model=model,
        unitary=unitary if unitary is not None else identity(model.dim),
        value_of_label=family_values(model, tol=classify_tol),
    )


def build_product_encoding(n, max_n=10, classify_tol=CLASSIFY_TOL):
    """Number k is the basis state e_k of the product model."""
    return build_model_encoding(build_product_model(n, max_n=max_n), kind="product", classify_tol=classify_tol)


def build_entangled_encoding(n, max_n=10, cap=DEFAULT_DENSE_CAP, classify_tol=CLASSIFY_TOL):
    """
    Number with bits t is U|t⟩, U pairing each string with its complement.

    The underlying model is the product model conjugated by U, so every V, P and
    U of the entangled model is U·op·U†.
    """
    if n < 2:
        err_msg = f"Entangled encoding needs n >= 2, got {n}: with a single site the images of U are product states"
        logger.error(err_msg)
        raise ValueError(err_msg)
    unitary = build_entangling_unitary(n, cap)
    model = conjugate_model(build_product_model(n, max_n=max_n), unitary, kind="entangled", cap=cap)
    return build_model_encoding(model, kind="entangled", unitary=unitary, classify_tol=classify_tol)


def encode_number(encoding, k):
    if not 0 <= k < encoding.dim:
        err_msg = f"Number {k} is outside 0..{encoding.dim - 1}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    return encoding.states[k]


def decode_columns(encoding, columns, method="table", fidelity=DECODE_FIDELITY):
    """
    Recover the numbers carried by the columns of a (dim, m) array.

    Args:
        method: "table" takes the largest overlap with the encoding table;
            "adjoint" rotates back with the family basis and reads the label

    Raises:
        DecodeError: some column's best overlap squared is below `fidelity`
    """
    columns = np.asarray(columns)
    if columns.shape[0] != encoding.dim:
        raise DecodeError(f"States of dim {columns.shape[0]} cannot carry an {encoding.n}-bit number")
    if method == "table":
        coefficients = encoding.table().conj().T @ columns
    elif method == "adjoint":
        coefficients = encoding.model.family_basis.adjoint().matmat(columns)
    else:
        raise ValueError(f"Unknown decode method {method!r}")
    magnitudes = np.abs(coefficients) ** 2
    best = np.argmax(magnitudes, axis=0)
    overlaps = magnitudes[best, np.arange(magnitudes.shape[1])]
    if np.any(overlaps < fidelity):
        worst = float(overlaps.min())
        err_msg = f"State overlaps at most {worst:.4f} with an encoded number, below {fidelity}"
        logger.error(err_msg)
        raise DecodeError(err_msg)
    if method == "table":
        return best
    return encoding.value_of_label[best]


def decode_number(encoding, state, method="table", fidelity=DECODE_FIDELITY):
    """
    Recover the number carried by `state`; see `decode_columns` for the methods.

    Raises:
        DecodeError: best overlap squared is below `fidelity`
    """
    if state.dim != encoding.dim:
        raise DecodeError(f"State of dim {state.dim} cannot carry an {encoding.n}-bit number")
    return int(decode_columns(encoding, state.amps.reshape(-1, 1), method, fidelity)[0])


def encoding_to_dict(encoding):
    return {
        "n": encoding.n,
        "kind": encoding.kind,
        "states": [[[float(a.real), float(a.imag)] for a in state.amps] for state in encoding.states],
    }


def state_from_dict_entry(entry):
    """Inverse of one `states` entry of `encoding_to_dict`."""
    return StateVector([complex(re, im) for re, im in entry])


def compare_constructions(encoding, builder, cap=DEFAULT_DENSE_CAP, **kwargs):
    """
    Build an arithmetic operator twice and measure the difference.

    Once from the encoding's own model, once by conjugating the product-model
    operator with U on every register.

    Returns:
        float: max-norm deviation between the two dense matrices
    """
    direct = builder(encoding.model, **kwargs)
    product_model = build_product_model(encoding.n)
    conjugated = conjugate_arithmetic(builder(product_model, **kwargs), encoding.unitary)
    return max_deviation(direct.op, conjugated.op, cap)
