# src/representations/entanglement.py

from dataclasses import dataclass

import numpy as np

from src.hilbert_core.operators import DEFAULT_DENSE_CAP, DenseOperator, DimensionLimitError
from src.hilbert_core.predicates import SCHMIDT_TOL, schmidt_rank, single_site_cuts
from src.utils.logger import get_logger

logger = get_logger(__name__)

ALL_PRODUCT = "all-product"
ALL_ENTANGLED = "all-entangled"
MIXED = "mixed"


def build_entangling_unitary(n, cap=DEFAULT_DENSE_CAP):
    """
    Pair each bit string with its complement.

    For every x whose top bit (the digit of a_n) is 0, with complement
    x̄ = x XOR (2^n - 1):  U e_x = (e_x + e_x̄)/√2  and  U e_x̄ = (e_x - e_x̄)/√2.
    """
    if n < 1:
        raise ValueError(f"Entangling unitary needs n >= 1, got {n}")
    dim = 2**n
    if dim > cap:
        err_msg = f"Entangling unitary of dim {dim} exceeds the dense cap {cap}"
        logger.error(err_msg)
        raise DimensionLimitError(err_msg)
    matrix = np.zeros((dim, dim))
    half = dim // 2
    amplitude = 1 / np.sqrt(2)
    for x in range(half):
        complement = x ^ (dim - 1)
        matrix[x, x] = amplitude
        matrix[complement, x] = amplitude
        matrix[x, complement] = amplitude
        matrix[complement, complement] = -amplitude
    return DenseOperator(matrix)


@dataclass(frozen=True)
class EntanglementCertificate:
    """Schmidt ranks of every encoded number across every single-site cut."""

    n: int
    kind: str
    ranks: tuple

    @property
    def verdict(self):
        entangled = [any(rank > 1 for rank in row) for row in self.ranks]
        if not any(entangled):
            return ALL_PRODUCT
        if all(entangled):
            return ALL_ENTANGLED
        return MIXED

    def to_dict(self):
        return {"n": self.n, "kind": self.kind, "verdict": self.verdict, "ranks": [list(row) for row in self.ranks]}


def certify_entanglement(encoding, tol=SCHMIDT_TOL):
    """
    Schmidt rank of each encoded state on each single-site bipartition.

    A one-site register admits no bipartition, so every row is empty and the
    verdict is all-product.
    """
    cuts = single_site_cuts(encoding.n) if encoding.n > 1 else []
    ranks = tuple(tuple(schmidt_rank(state, cut, tol) for cut in cuts) for state in encoding.states)
    certificate = EntanglementCertificate(n=encoding.n, kind=encoding.kind, ranks=ranks)
    logger.info(f"Entanglement certificate for {encoding.kind} n={encoding.n}: {certificate.verdict}")
    return certificate
