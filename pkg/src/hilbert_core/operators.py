# src/hilbert_core/operators.py
#
# Linear operators on finite register spaces of dimension 2^N.
# Basis index convention: register r of k occupies the index block of stride
# dim_reg^(k-1-r) (left tensor factor = high-order block); inside one register
# bit j-1 of the basis index carries the digit of parameter a_j.

from functools import reduce

import numpy as np

from src.utils.logger import get_logger

COMPLEX = np.complex128

DEFAULT_MAX_DIM = 4096
DEFAULT_DENSE_CAP = 4096

# Monomial weights closer than this to the unit circle are treated as phases
PHASE_TOL = 1e-12

logger = get_logger(__name__)


class DimensionMismatchError(ValueError):
    """Operands live on spaces of different dimension."""


class DimensionLimitError(ValueError):
    """A composite space or a dense materialization exceeds the configured cap."""


def is_power_of_two(value):
    return isinstance(value, (int, np.integer)) and value > 0 and (value & (value - 1)) == 0


def num_sites(dim):
    """Number of two-level sites (bits) of a 2^N-dimensional space."""
    return int(dim).bit_length() - 1


def check_dims(f, g, operation):
    if f.dim != g.dim:
        err_msg = f"{operation}: dimension mismatch ({f.dim} vs {g.dim})"
        logger.error(err_msg)
        raise DimensionMismatchError(err_msg)


class LinearOperator:
    """
    Base class of every operator representation.

    Operators are immutable. Application works on column batches: `matmat`
    takes an array of shape (dim, m) and returns the images of the m columns.
    Representations that are exactly monomial (one nonzero per column) expose
    that form through `as_monomial`, which the structural predicates use to
    avoid dense materialization.
    """

    def __init__(self, dim):
        if not is_power_of_two(dim):
            raise ValueError(f"Operator dimension must be a positive power of 2, got {dim}")
        self._dim = int(dim)
        self._monomial_cache = None
        self._monomial_known = False

    @property
    def dim(self):
        return self._dim

    def matmat(self, columns):
        columns = np.asarray(columns, dtype=COMPLEX)
        if columns.ndim == 1:
            columns = columns.reshape(-1, 1)
        if columns.shape[0] != self._dim:
            err_msg = f"Cannot apply a dim-{self._dim} operator to arrays with {columns.shape[0]} rows"
            logger.error(err_msg)
            raise DimensionMismatchError(err_msg)
        return self._matmat(columns)

    def matvec(self, vector):
        return self.matmat(np.asarray(vector, dtype=COMPLEX).reshape(-1, 1))[:, 0]

    def _matmat(self, columns):
        raise NotImplementedError

    def to_dense(self, cap=DEFAULT_DENSE_CAP):
        _check_dense_cap(self._dim, cap)
        return self._matmat(np.eye(self._dim, dtype=COMPLEX))

    def adjoint(self):
        raise NotImplementedError

    def as_monomial(self):
        if not self._monomial_known:
            self._monomial_cache = self._build_monomial()
            self._monomial_known = True
        return self._monomial_cache

    def _build_monomial(self):
        return None

    def __repr__(self):
        return f"{type(self).__name__}(dim={self._dim})"


def _check_dense_cap(dim, cap):
    if dim > cap:
        err_msg = f"Dense materialization of dim {dim} exceeds the cap of {cap}; keep the operator factored"
        logger.error(err_msg)
        raise DimensionLimitError(err_msg)


class DenseOperator(LinearOperator):
    def __init__(self, matrix):
        matrix = np.array(matrix, dtype=COMPLEX)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Dense operator needs a square matrix, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("Dense operator contains non-finite entries")
        super().__init__(matrix.shape[0])
        matrix.setflags(write=False)
        self.matrix = matrix

    def _matmat(self, columns):
        return self.matrix @ columns

    def to_dense(self, cap=DEFAULT_DENSE_CAP):
        _check_dense_cap(self._dim, cap)
        return np.array(self.matrix)

    def adjoint(self):
        return DenseOperator(self.matrix.conj().T)


class MonomialOperator(LinearOperator):
    """
    Operator with at most one nonzero entry per column: e_x -> weights[x] * e_{index_map[x]}.

    The index map need not be injective (the doubling map is not), in which
    case the adjoint falls back to a dense matrix.
    """

    def __init__(self, index_map, weights=None):
        index_map = np.array(index_map, dtype=np.int64).ravel()
        super().__init__(index_map.size)
        if weights is None:
            weights = np.ones(index_map.size, dtype=COMPLEX)
        weights = np.array(weights, dtype=COMPLEX).ravel()
        if weights.size != index_map.size:
            raise ValueError("Monomial operator needs one weight per basis index")
        if index_map.min() < 0 or index_map.max() >= self._dim:
            raise ValueError("Monomial index map leaves the space")
        if not np.all(np.isfinite(weights)):
            raise ValueError("Monomial operator contains non-finite weights")
        index_map.setflags(write=False)
        weights.setflags(write=False)
        self.index_map = index_map
        self.weights = weights
        self.is_bijective = bool(np.bincount(index_map, minlength=self._dim).max() == 1)

    def _matmat(self, columns):
        scaled = self.weights[:, None] * columns
        if self.is_bijective:
            out = np.empty_like(scaled)
            out[self.index_map] = scaled
            return out
        out = np.zeros_like(scaled)
        np.add.at(out, self.index_map, scaled)
        return out

    def to_dense(self, cap=DEFAULT_DENSE_CAP):
        _check_dense_cap(self._dim, cap)
        matrix = np.zeros((self._dim, self._dim), dtype=COMPLEX)
        matrix[self.index_map, np.arange(self._dim)] = self.weights
        return matrix

    def adjoint(self):
        if not self.is_bijective:
            return DenseOperator(self.to_dense().conj().T)
        inverse = np.empty(self._dim, dtype=np.int64)
        inverse[self.index_map] = np.arange(self._dim)
        return monomial(inverse, np.conj(self.weights[inverse]))

    def _build_monomial(self):
        return self


class PhasePermutation(MonomialOperator):
    """Bijective index map with unit-modulus phases."""

    def __init__(self, index_map, phases=None):
        super().__init__(index_map, phases)
        if not self.is_bijective:
            raise ValueError("Phase permutation index map must be a bijection")
        if np.max(np.abs(np.abs(self.weights) - 1.0)) > PHASE_TOL:
            raise ValueError("Phase permutation phases must have unit modulus")

    @property
    def phases(self):
        return self.weights


class DiagonalOperator(MonomialOperator):
    def __init__(self, diagonal):
        diagonal = np.asarray(diagonal, dtype=COMPLEX).ravel()
        super().__init__(np.arange(diagonal.size), diagonal)

    @property
    def diagonal(self):
        return self.weights


class IdentityOperator(PhasePermutation):
    def __init__(self, dim):
        super().__init__(np.arange(dim))

    def _matmat(self, columns):
        return np.array(columns)

    def adjoint(self):
        return self


def monomial(index_map, weights=None):
    """Build the most specific monomial class for the given map and weights."""
    index_map = np.asarray(index_map, dtype=np.int64)
    weights = np.ones(index_map.size, dtype=COMPLEX) if weights is None else np.asarray(weights, dtype=COMPLEX)
    is_identity_map = np.array_equal(index_map, np.arange(index_map.size))
    unit = np.max(np.abs(np.abs(weights) - 1.0)) <= PHASE_TOL
    if is_identity_map and unit and np.allclose(weights, 1.0, rtol=0.0, atol=PHASE_TOL):
        return IdentityOperator(index_map.size)
    if is_identity_map:
        return DiagonalOperator(weights)
    bijective = np.bincount(index_map, minlength=index_map.size).max() == 1
    if bijective and unit:
        return PhasePermutation(index_map, weights)
    return MonomialOperator(index_map, weights)


def _compose_monomials(f, g):
    return monomial(f.index_map[g.index_map], g.weights * f.weights[g.index_map])


def _kron_monomials(left, right):
    index_map = (left.index_map[:, None] * right.dim + right.index_map[None, :]).ravel()
    weights = np.outer(left.weights, right.weights).ravel()
    return monomial(index_map, weights)


def _add_monomials(f, g):
    nonzero_f = f.weights != 0
    nonzero_g = g.weights != 0
    clash = nonzero_f & nonzero_g & (f.index_map != g.index_map)
    if clash.any():
        return None
    index_map = np.where(nonzero_f, f.index_map, g.index_map)
    weights = np.where(nonzero_f, f.weights, 0) + np.where(nonzero_g, g.weights, 0)
    return monomial(index_map, weights)


class KroneckerOperator(LinearOperator):
    """left ⊗ right, never materialized; `left` owns the high-order index block."""

    def __init__(self, left, right):
        super().__init__(left.dim * right.dim)
        self.left = left
        self.right = right

    def _matmat(self, columns):
        mono = self.as_monomial()
        if mono is not None:
            return mono._matmat(columns)
        d_left, d_right = self.left.dim, self.right.dim
        batch = columns.shape[1]
        block = columns.reshape(d_left, d_right * batch)
        block = self.left._matmat(block).reshape(d_left, d_right, batch)
        block = block.transpose(1, 0, 2).reshape(d_right, d_left * batch)
        block = self.right._matmat(block).reshape(d_right, d_left, batch)
        return block.transpose(1, 0, 2).reshape(self._dim, batch)

    def to_dense(self, cap=DEFAULT_DENSE_CAP):
        _check_dense_cap(self._dim, cap)
        return np.kron(self.left.to_dense(cap), self.right.to_dense(cap))

    def adjoint(self):
        return KroneckerOperator(self.left.adjoint(), self.right.adjoint())

    def _build_monomial(self):
        left, right = self.left.as_monomial(), self.right.as_monomial()
        if left is None or right is None:
            return None
        return _kron_monomials(left, right)


class FactoredOperator(LinearOperator):
    """
    Ordered product factors[0] · factors[1] · ... · factors[-1].

    The last factor acts first. The factor list is kept so that builders can
    report their elementary factor counts.
    """

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("Factored operator needs at least one factor")
        for factor in factors[1:]:
            check_dims(factors[0], factor, "FactoredOperator")
        super().__init__(factors[0].dim)
        self.factors = factors

    def _matmat(self, columns):
        mono = self.as_monomial()
        if mono is not None:
            return mono._matmat(columns)
        for factor in reversed(self.factors):
            columns = factor._matmat(columns)
        return columns

    def adjoint(self):
        return FactoredOperator(factor.adjoint() for factor in reversed(self.factors))

    def _build_monomial(self):
        forms = [factor.as_monomial() for factor in self.factors]
        if any(form is None for form in forms):
            return None
        return reduce(_compose_monomials, forms)


class SumOperator(LinearOperator):
    def __init__(self, terms):
        terms = tuple(terms)
        if not terms:
            raise ValueError("Sum operator needs at least one term")
        for term in terms[1:]:
            check_dims(terms[0], term, "SumOperator")
        super().__init__(terms[0].dim)
        self.terms = terms

    def _matmat(self, columns):
        mono = self.as_monomial()
        if mono is not None:
            return mono._matmat(columns)
        total = self.terms[0]._matmat(columns)
        for term in self.terms[1:]:
            total = total + term._matmat(columns)
        return total

    def adjoint(self):
        return SumOperator(term.adjoint() for term in self.terms)

    def _build_monomial(self):
        forms = [term.as_monomial() for term in self.terms]
        if any(form is None for form in forms):
            return None
        total = forms[0]
        for form in forms[1:]:
            total = _add_monomials(total, form)
            if total is None:
                return None
        return total


def identity(dim):
    return IdentityOperator(dim)


def compose(f, g):
    """
    Return f·g (g acts first).

    Monomial operands collapse to a monomial and dense operands multiply out;
    anything else is kept as a factor list.
    """
    check_dims(f, g, "compose")
    f_mono, g_mono = f.as_monomial(), g.as_monomial()
    if f_mono is not None and g_mono is not None:
        return _compose_monomials(f_mono, g_mono)
    if isinstance(f, DenseOperator) and (isinstance(g, DenseOperator) or g_mono is not None):
        return DenseOperator(f.matrix @ g.to_dense(max(f.dim, DEFAULT_DENSE_CAP)))
    if isinstance(g, DenseOperator) and f_mono is not None:
        return DenseOperator(f_mono._matmat(g.matrix))
    factors = []
    for op in (f, g):
        factors.extend(op.factors if isinstance(op, FactoredOperator) else (op,))
    return FactoredOperator(factors)


def compose_all(*ops):
    return reduce(compose, ops)


def power(op, exponent):
    result = identity(op.dim)
    for _ in range(exponent):
        result = compose(op, result)
    return result


def tensor_op(f, g, max_dim=DEFAULT_MAX_DIM):
    dim = f.dim * g.dim
    if dim > max_dim:
        err_msg = f"Tensor product dimension {dim} exceeds the configured maximum {max_dim}"
        logger.error(err_msg)
        raise DimensionLimitError(err_msg)
    return KroneckerOperator(f, g)


def tensor_all(*ops, max_dim=DEFAULT_MAX_DIM):
    return reduce(lambda f, g: tensor_op(f, g, max_dim=max_dim), ops)


def adjoint(op):
    return op.adjoint()


def conjugate(op, unitary, cap=DEFAULT_DENSE_CAP):
    """
    unitary · op · unitary†.

    Materialized densely when the space is small enough, otherwise kept factored.
    """
    check_dims(op, unitary, "conjugate")
    if op.dim <= cap and isinstance(unitary, DenseOperator):
        rotated = unitary.matrix @ op._matmat(unitary.matrix.conj().T)
        return DenseOperator(rotated)
    return FactoredOperator((unitary, op, unitary.adjoint()))
