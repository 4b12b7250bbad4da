# src/arithmetic_ops/oracles.py
#
# Brute-force agreement checks between arithmetic operators and integer
# arithmetic mod 2^n. Inputs are encoded as tensor products of family states,
# pushed through the operator in column batches and decoded register by
# register in the family basis.

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from src.successor_model.model import family_values
from src.hilbert_core.operators import COMPLEX, DEFAULT_MAX_DIM, tensor_all
from src.utils.logger import get_logger

BATCH_SIZE = 512
DECODE_FIDELITY = 0.999
AMPLITUDE_TOL = 1e-8
MAX_WITNESSES = 16

logger = get_logger(__name__)


@dataclass
class OracleResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)
    failure_count: int = 0
    max_deviation: float = 0.0
    min_fidelity: float = 1.0

    @property
    def passed(self):
        return self.failure_count == 0

    def to_dict(self):
        return {
            "name": self.name,
            "cases": self.cases,
            "pass": self.passed,
            "failure_count": self.failure_count,
            "failures": [list(map(list, failure)) for failure in self.failures],
        }


class FamilyCodec:
    """
    Encode register values as family product states and decode operator outputs.

    Args:
        model: Successor model whose family basis and ordering define the encoding
        layout: Register layout the operator acts on
    """

    def __init__(self, model, layout, max_dim=DEFAULT_MAX_DIM):
        self.model = model
        self.layout = layout.check(max_dim)
        self.values = family_values(model)
        self.index_of_value = np.empty_like(self.values)
        self.index_of_value[self.values] = np.arange(model.dim)
        basis = model.family_basis
        self.encoder = tensor_all(*([basis] * layout.k), max_dim=max_dim)
        self.decoder = self.encoder.adjoint()

    def encode(self, inputs):
        """Columns of the encoded inputs, one column per tuple of register values."""
        inputs = np.asarray(inputs, dtype=np.int64).reshape(-1, self.layout.k)
        labels = self.index_of_value[inputs]
        strides = np.array([self.layout.stride(r) for r in range(self.layout.k)])
        indices = labels @ strides
        columns = np.zeros((self.layout.dim, len(indices)), dtype=COMPLEX)
        columns[indices, np.arange(len(indices))] = 1.0
        return self.encoder.matmat(columns)

    def decode(self, columns):
        """
        Decode output columns.

        Returns:
            tuple: (register values of shape (m, k), fidelity per column, amplitude deviation per column)
        """
        coefficients = self.decoder.matmat(columns)
        magnitudes = np.abs(coefficients)
        best = np.argmax(magnitudes, axis=0)
        picked = coefficients[best, np.arange(coefficients.shape[1])]
        fidelity = np.abs(picked) ** 2
        residual = np.array(coefficients)
        residual[best, np.arange(coefficients.shape[1])] -= 1.0
        deviation = np.max(np.abs(residual), axis=0)
        digits = self.layout.digits(best)
        return self.values[digits].T, fidelity, deviation


def evaluate(model, arithmetic, inputs, batch_size=BATCH_SIZE, fidelity=DECODE_FIDELITY, tol=AMPLITUDE_TOL):
    """
    Decoded outputs of `arithmetic` on every input tuple.

    Returns:
        tuple: (decoded register values of shape (m, k), mask of outputs that decoded cleanly)
    """
    codec = FamilyCodec(model, arithmetic.layout)
    inputs = np.asarray(list(inputs), dtype=np.int64).reshape(-1, arithmetic.layout.k)
    decoded = np.empty_like(inputs)
    clean = np.empty(len(inputs), dtype=bool)
    for start in range(0, len(inputs), batch_size):
        chunk = inputs[start : start + batch_size]
        values, fidelities, deviations = codec.decode(arithmetic.matmat(codec.encode(chunk)))
        decoded[start : start + len(chunk)] = values
        clean[start : start + len(chunk)] = (fidelities >= fidelity) & (deviations <= tol)
    return decoded, clean


def verify_against_oracle(name, model, arithmetic, inputs, oracle, batch_size=BATCH_SIZE, fidelity=DECODE_FIDELITY, tol=AMPLITUDE_TOL):
    """
    Apply `arithmetic` to every input tuple and compare the decoded output with `oracle(tuple)`.

    Args:
        name: Check name used in the result
        inputs: Iterable of register-value tuples
        oracle: Function from an input tuple to the expected output tuple

    Returns:
        OracleResult
    """
    codec = FamilyCodec(model, arithmetic.layout)
    inputs = np.asarray(list(inputs), dtype=np.int64).reshape(-1, arithmetic.layout.k)
    result = OracleResult(name=name, cases=len(inputs))
    for start in range(0, len(inputs), batch_size):
        chunk = inputs[start : start + batch_size]
        outputs = arithmetic.matmat(codec.encode(chunk))
        decoded, fidelities, deviations = codec.decode(outputs)
        result.max_deviation = max(result.max_deviation, float(deviations.max()))
        result.min_fidelity = min(result.min_fidelity, float(fidelities.min()))
        for case, got, fid, dev in zip(chunk, decoded, fidelities, deviations):
            expected = tuple(int(v) for v in oracle(tuple(int(x) for x in case)))
            got = tuple(int(v) for v in got)
            if got != expected or fid < fidelity or dev > tol:
                result.failure_count += 1
                if len(result.failures) < MAX_WITNESSES:
                    result.failures.append((tuple(int(x) for x in case), got))
    logger.debug(f"{name}: {result.cases} cases, {result.failure_count} failures")
    return result


def verify_addition(model, arithmetic, **kwargs):
    """All 4^n register pairs against (x, y) -> (x, x + y mod 2^n)."""
    modulus = model.dim
    inputs = product(range(modulus), repeat=2)
    return verify_against_oracle("addition-oracle", model, arithmetic, inputs, lambda c: (c[0], (c[0] + c[1]) % modulus), **kwargs)


def verify_multiplication(model, arithmetic, accumulate=False, **kwargs):
    """
    Multiplication against integer products mod 2^n.

    Triple operators are fed (x, y, 0) for every x, y, or (x, y, z) for every z
    with `accumulate=True`; quadruple operators get register 4 = 0 throughout.
    """
    modulus = model.dim
    k = arithmetic.layout.k
    accumulators = range(modulus) if accumulate else (0,)
    inputs = [(x, y, z) + (0,) * (k - 3) for x, y, z in product(range(modulus), range(modulus), accumulators)]

    def oracle(case):
        x, y, z = case[:3]
        total = (z + x * y) % modulus
        if k == 3:
            left_over = (y * (modulus // 2)) % modulus if arithmetic.literal else 0
            return (x, left_over, total)
        return (x, y, total, 0)

    name = "multiplication-accumulate-oracle" if accumulate else "multiplication-oracle"
    return verify_against_oracle(f"{name}-{'triple' if k == 3 else 'quadruple'}", model, arithmetic, inputs, oracle, **kwargs)


def verify_unitary_on_family(model, arithmetic, batch_size=BATCH_SIZE, tol=AMPLITUDE_TOL):
    """
    Exhaustive unitarity check: every encoded basis input must map onto a
    distinct family state, which makes the Gram matrix of the images the identity.
    """
    layout = arithmetic.layout
    codec = FamilyCodec(model, layout)
    inputs = np.array(list(product(range(model.dim), repeat=layout.k)), dtype=np.int64)
    images = np.empty(len(inputs), dtype=np.int64)
    strides = np.array([layout.stride(r) for r in range(layout.k)])
    result = OracleResult(name="quadruple-unitarity" if layout.k == 4 else f"unitarity-{layout.k}", cases=len(inputs))
    for start in range(0, len(inputs), batch_size):
        chunk = inputs[start : start + batch_size]
        decoded, fidelities, deviations = codec.decode(arithmetic.matmat(codec.encode(chunk)))
        images[start : start + len(chunk)] = decoded @ strides
        result.max_deviation = max(result.max_deviation, float(deviations.max()))
        result.min_fidelity = min(result.min_fidelity, float(fidelities.min()))
        for case, got, dev in zip(chunk, decoded, deviations):
            if dev > tol:
                result.failure_count += 1
                if len(result.failures) < MAX_WITNESSES:
                    result.failures.append((tuple(int(x) for x in case), tuple(int(v) for v in got)))
    unique, counts = np.unique(images, return_counts=True)
    collisions = int(np.sum(counts[counts > 1] - 1))
    if collisions:
        result.failure_count += collisions
        for image in unique[counts > 1][: MAX_WITNESSES - len(result.failures)]:
            sources = inputs[images == image]
            result.failures.append((tuple(int(x) for x in sources[0]), tuple(int(x) for x in sources[1])))
    return result
