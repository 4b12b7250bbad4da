# src/hilbert_core/predicates.py
#
# Structural predicates used by every verification layer. Monomial operators
# are checked on their index map and weights; everything else is compared as a
# dense matrix, subject to the dense cap.

from dataclasses import dataclass

import numpy as np
from scipy.linalg import svdvals

from src.hilbert_core.operators import (
    DEFAULT_DENSE_CAP,
    DimensionMismatchError,
    DenseOperator,
    check_dims,
    compose,
    monomial,
    num_sites,
)
from src.utils.logger import get_logger

OPERATOR_TOL = 1e-10
SCHMIDT_TOL = 1e-8

logger = get_logger(__name__)


def operators_close(f, g, tol=OPERATOR_TOL, cap=DEFAULT_DENSE_CAP):
    """Max-norm comparison ‖f − g‖_max ≤ tol."""
    check_dims(f, g, "operators_close")
    f_mono, g_mono = f.as_monomial(), g.as_monomial()
    if f_mono is not None and g_mono is not None:
        f_zero = np.abs(f_mono.weights) <= tol
        g_zero = np.abs(g_mono.weights) <= tol
        both_zero = f_zero & g_zero
        same_slot = f_mono.index_map == g_mono.index_map
        # Different rows: both entries must vanish on their own
        moved_ok = same_slot | both_zero
        weight_ok = np.where(same_slot, np.abs(f_mono.weights - g_mono.weights) <= tol, both_zero)
        return bool(np.all(moved_ok & weight_ok))
    return bool(np.max(np.abs(f.to_dense(cap) - g.to_dense(cap))) <= tol)


def max_deviation(f, g, cap=DEFAULT_DENSE_CAP):
    check_dims(f, g, "max_deviation")
    return float(np.max(np.abs(f.to_dense(cap) - g.to_dense(cap))))


def is_unitary(op, tol=OPERATOR_TOL, cap=DEFAULT_DENSE_CAP):
    mono = op.as_monomial()
    if mono is not None:
        return bool(mono.is_bijective and np.max(np.abs(np.abs(mono.weights) - 1.0)) <= tol)
    matrix = op.to_dense(cap)
    return bool(np.max(np.abs(matrix.conj().T @ matrix - np.eye(op.dim))) <= tol)


def is_projection(op, tol=OPERATOR_TOL, cap=DEFAULT_DENSE_CAP):
    mono = op.as_monomial()
    if mono is not None:
        diagonal = mono.index_map == np.arange(op.dim)
        nonzero = np.abs(mono.weights) > tol
        if np.any(nonzero & ~diagonal):
            return False
        weights = mono.weights[nonzero]
        return bool(np.all(np.abs(weights - 1.0) <= tol))
    matrix = op.to_dense(cap)
    idempotent = np.max(np.abs(matrix @ matrix - matrix)) <= tol
    hermitian = np.max(np.abs(matrix.conj().T - matrix)) <= tol
    return bool(idempotent and hermitian)


def commutes(f, g, tol=OPERATOR_TOL, cap=DEFAULT_DENSE_CAP):
    check_dims(f, g, "commutes")
    if f.as_monomial() is not None and g.as_monomial() is not None:
        return operators_close(compose(f, g), compose(g, f), tol, cap)
    f_dense, g_dense = f.to_dense(cap), g.to_dense(cap)
    return bool(np.max(np.abs(f_dense @ g_dense - g_dense @ f_dense)) <= tol)


def trace(op, cap=DEFAULT_DENSE_CAP):
    mono = op.as_monomial()
    if mono is not None:
        fixed = mono.index_map == np.arange(op.dim)
        return complex(np.sum(mono.weights[fixed]))
    return complex(np.trace(op.to_dense(cap)))


def monomial_from_dense(matrix, tol=OPERATOR_TOL):
    """
    Recover the monomial structure of a dense matrix.

    Returns:
        MonomialOperator or None: None when some column has more than one entry above `tol`
    """
    matrix = np.asarray(matrix)
    magnitudes = np.abs(matrix)
    if np.any(np.sum(magnitudes > tol, axis=0) > 1):
        return None
    rows = np.argmax(magnitudes, axis=0)
    weights = matrix[rows, np.arange(matrix.shape[1])]
    weights = np.where(np.abs(weights) > tol, weights, 0)
    return monomial(rows, weights)


def as_structured(op, tol=OPERATOR_TOL, cap=DEFAULT_DENSE_CAP):
    """The monomial form of `op` if one exists, exact or detected from its dense matrix."""
    mono = op.as_monomial()
    if mono is not None:
        return mono
    if isinstance(op, DenseOperator) or op.dim <= cap:
        return monomial_from_dense(op.to_dense(cap), tol)
    return None


@dataclass(frozen=True)
class Bipartition:
    """Split of the sites of a register space; site s is bit s of the basis index."""

    left: frozenset
    right: frozenset

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))
        if not self.left or not self.right:
            raise ValueError("Both sides of a bipartition must be nonempty")
        if self.left & self.right:
            raise ValueError(f"Bipartition sides overlap on sites {sorted(self.left & self.right)}")
        sites = self.left | self.right
        if sites != frozenset(range(len(sites))):
            raise ValueError(f"Bipartition must cover sites 0..{len(sites) - 1}, got {sorted(sites)}")

    @property
    def num_sites(self):
        return len(self.left) + len(self.right)

    @classmethod
    def single_site(cls, site, num_sites):
        return cls(frozenset([site]), frozenset(range(num_sites)) - {site})

    def label(self):
        return f"{sorted(self.left)}|{sorted(self.right)}"


def single_site_cuts(num_sites):
    return [Bipartition.single_site(site, num_sites) for site in range(num_sites)]


def schmidt_coefficients(state, cut):
    sites = num_sites(state.dim)
    if cut.num_sites != sites:
        err_msg = f"State with {sites} sites does not factorize across a {cut.num_sites}-site bipartition"
        logger.error(err_msg)
        raise DimensionMismatchError(err_msg)
    # Site s is bit s of the index, i.e. tensor axis sites-1-s
    tensor = state.amps.reshape((2,) * sites)
    left_axes = [sites - 1 - s for s in sorted(cut.left)]
    right_axes = [sites - 1 - s for s in sorted(cut.right)]
    matrix = tensor.transpose(left_axes + right_axes).reshape(2 ** len(left_axes), 2 ** len(right_axes))
    return svdvals(matrix)


def schmidt_rank(state, cut, tol=SCHMIDT_TOL):
    return int(np.sum(schmidt_coefficients(state, cut) > tol))
