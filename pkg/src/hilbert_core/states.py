# src/hilbert_core/states.py

from functools import reduce

import numpy as np

from src.hilbert_core.operators import COMPLEX, DimensionMismatchError, is_power_of_two, num_sites
from src.utils.logger import get_logger

NORM_TOL = 1e-10

logger = get_logger(__name__)


class StateVector:
    """
    Immutable amplitude vector over a 2^N-dimensional register space.

    Args:
        amps: Complex amplitudes, one per basis index
        require_normalized: Reject vectors whose L2 norm differs from 1 by more than `tol`
        tol: Normalization tolerance
    """

    __slots__ = ("_amps",)

    def __init__(self, amps, require_normalized=True, tol=NORM_TOL):
        amps = np.array(amps, dtype=COMPLEX)
        if amps.ndim != 1:
            raise ValueError(f"State amplitudes must be one-dimensional, got shape {amps.shape}")
        if not is_power_of_two(amps.size):
            raise ValueError(f"State dimension must be a positive power of 2, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("State contains non-finite amplitudes")
        if require_normalized:
            norm = np.linalg.norm(amps)
            if abs(norm - 1.0) > tol:
                err_msg = f"State is not normalized (norm {norm:.3e})"
                logger.error(err_msg)
                raise ValueError(err_msg)
        amps.setflags(write=False)
        self._amps = amps

    @property
    def amps(self):
        return self._amps

    @property
    def dim(self):
        return self._amps.size

    @property
    def num_sites(self):
        return num_sites(self.dim)

    def norm(self):
        return float(np.linalg.norm(self._amps))

    def support(self, tol=NORM_TOL):
        """Basis indices carrying amplitude above `tol`."""
        return [int(i) for i in np.flatnonzero(np.abs(self._amps) > tol)]

    @classmethod
    def basis(cls, dim, index):
        if not 0 <= index < dim:
            raise ValueError(f"Basis index {index} outside a dim-{dim} space")
        amps = np.zeros(dim, dtype=COMPLEX)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def superposition(cls, dim, coefficients):
        """Normalized combination of basis states from an {index: coefficient} mapping."""
        amps = np.zeros(dim, dtype=COMPLEX)
        for index, coefficient in coefficients.items():
            amps[index] += coefficient
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("Superposition of zero amplitude")
        return cls(amps / norm)

    def __repr__(self):
        return f"StateVector(dim={self.dim}, support={self.support()[:8]})"


def basis_state(dim, index):
    return StateVector.basis(dim, index)


def apply(op, state):
    """Return op·state. The result is normalized only when `op` is norm preserving on `state`."""
    if op.dim != state.dim:
        err_msg = f"apply: operator dim {op.dim} does not match state dim {state.dim}"
        logger.error(err_msg)
        raise DimensionMismatchError(err_msg)
    return StateVector(op.matvec(state.amps), require_normalized=False)


def tensor_state(*states):
    """Kronecker product of states; the first argument is the high-order block."""
    if not states:
        raise ValueError("tensor_state needs at least one state")
    return StateVector(reduce(np.kron, (state.amps for state in states)), require_normalized=False)


def inner(s1, s2):
    """<s1|s2>, conjugate-linear in the first argument."""
    if s1.dim != s2.dim:
        err_msg = f"inner: dimension mismatch ({s1.dim} vs {s2.dim})"
        logger.error(err_msg)
        raise DimensionMismatchError(err_msg)
    return complex(np.vdot(s1.amps, s2.amps))


def states_close(s1, s2, tol=NORM_TOL):
    if s1.dim != s2.dim:
        return False
    return bool(np.max(np.abs(s1.amps - s2.amps)) <= tol)


def gram_matrix(states):
    columns = np.stack([state.amps for state in states], axis=1)
    return columns.conj().T @ columns
