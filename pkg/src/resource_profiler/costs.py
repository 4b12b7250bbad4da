# src/resource_profiler/costs.py

from dataclasses import asdict, dataclass
from enum import Enum
from io import StringIO

import pandas as pd

from src.arithmetic_ops.addition import build_addition
from src.arithmetic_ops.multiplication import build_multiplication_triple
from src.successor_model.model import build_product_model
from src.utils.logger import get_logger

CSV_COLUMNS = ["scheme", "op", "n", "granularity", "count"]

logger = get_logger(__name__)


class Scheme(Enum):
    MULTISUCCESSOR = "multisuccessor"
    UNARY = "unary"
    SQUAREWELL = "squarewell"


class Operation(Enum):
    S = "S"
    ADD = "add"
    MUL = "mul"


class Granularity(Enum):
    COARSE = "coarse"
    FINE = "fine"


class CostKind(Enum):
    POLYNOMIAL = "polynomial"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class ResourceTrace:
    """
    Elementary-operation count of one arithmetic operation at one n.

    `count` is the worst case. Unary traces also carry the average over
    operands, square-well S traces the best case of a carry-free increment.
    """

    scheme: str
    op: str
    n: int
    granularity: str
    count: int
    best_count: int | None = None
    average_count: float | None = None

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class CostModel:
    """
    Time t = c⁻¹·n^k (polynomial) or c⁻¹·K^n (exponential).

    A constant cost is the polynomial with k = 0.
    """

    c: float
    kind: CostKind
    k: float | None = None
    K: float | None = None

    def __post_init__(self):
        kind = CostKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.c <= 0:
            raise ValueError(f"Cost constant c must be positive, got {self.c}")
        if kind is CostKind.POLYNOMIAL and (self.k is None or self.k < 0):
            raise ValueError(f"Polynomial cost model needs k >= 0, got {self.k}")
        if kind is CostKind.EXPONENTIAL and (self.K is None or self.K <= 1):
            raise ValueError(f"Exponential cost model needs K > 1, got {self.K}")

    def to_dict(self):
        params = {"c": self.c, "kind": self.kind.value}
        if self.kind is CostKind.POLYNOMIAL:
            params["k"] = self.k
        else:
            params["K"] = self.K
        return params


def _check_n(n):
    if n < 1:
        err_msg = f"Resource counts need n >= 1, got {n}"
        logger.error(err_msg)
        raise ValueError(err_msg)


def time_estimate(cost_model, n):
    _check_n(n)
    if cost_model.kind is CostKind.POLYNOMIAL:
        return n**cost_model.k / cost_model.c
    return cost_model.K**n / cost_model.c


def rate_estimate(cost_model, n):
    """Information rate: c·n^(1-k) (polynomial) or c·n·K^(-n) (exponential)."""
    _check_n(n)
    if cost_model.kind is CostKind.POLYNOMIAL:
        return cost_model.c * n ** (1 - cost_model.k)
    return cost_model.c * n * cost_model.K ** (-n)


def squarewell_width(j, d1):
    """Width of well j when each well is half as wide as the previous one."""
    if j < 1 or d1 <= 0:
        err_msg = f"Well index must be >= 1 and d1 positive, got j={j}, d1={d1}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    return d1 * 2.0 ** (1 - j)


def squarewell_level_spacing(j):
    """Level spacing of well j in units of the widest well's spacing, (d_1/d_j)^2."""
    if j < 1:
        raise ValueError(f"Well index must be >= 1, got {j}")
    return 4 ** (j - 1)


def _multisuccessor_count(op, n, granularity):
    if op is Operation.S:
        return 1
    if op is Operation.ADD:
        return n
    # n controlled additions plus n doublings
    if granularity is Granularity.FINE:
        return n * n + n
    return 2 * n


def count_resources(scheme, op, n, granularity="fine"):
    """
    Deterministic cost of `op` on n-bit numbers under `scheme`.

    Args:
        scheme: multisuccessor, unary or squarewell
        op: S, add or mul
        n: Number of bits
        granularity: fine or coarse; only multisuccessor mul depends on it

    Returns:
        ResourceTrace
    """
    _check_n(n)
    scheme, op, granularity = Scheme(scheme), Operation(op), Granularity(granularity)
    best = average = None
    if scheme is Scheme.MULTISUCCESSOR:
        count = _multisuccessor_count(op, n, granularity)
    elif scheme is Scheme.UNARY:
        largest = 2**n - 1
        count = {Operation.S: 1, Operation.ADD: largest, Operation.MUL: largest * largest}[op]
        average = {Operation.S: 1.0, Operation.ADD: largest / 2, Operation.MUL: (largest / 2) ** 2}[op]
    else:
        sweep = sum(squarewell_level_spacing(j) for j in range(1, n + 1))
        count = {Operation.S: sweep, Operation.ADD: sweep, Operation.MUL: 2 * n * sweep}[op]
        if op is Operation.S:
            best = squarewell_level_spacing(1)
    return ResourceTrace(scheme.value, op.value, n, granularity.value, count, best_count=best, average_count=average)


def profile(scheme, op, n_values, granularity="fine"):
    return [count_resources(scheme, op, n, granularity) for n in n_values]


def traces_to_frame(traces):
    return pd.DataFrame([trace.to_dict() for trace in traces], columns=CSV_COLUMNS)


def traces_to_csv(traces, output_file=None):
    """
    Write `scheme,op,n,granularity,count` rows, one per trace.

    Returns:
        str: the CSV text (also written to `output_file` when given)
    """
    df = traces_to_frame(traces)
    buffer = StringIO()
    df.to_csv(buffer, index=False, lineterminator="\n")
    text = buffer.getvalue()
    if output_file is not None:
        with open(output_file, "w", encoding="utf-8", newline="") as file:
            file.write(text)
        logger.info(f"Wrote {len(df)} resource traces to {output_file}")
    return text


def verify_against_builders(n_max=6, granularities=("fine", "coarse")):
    """
    Compare multisuccessor counts with the counts reported by the product-model builders.

    Operators are assembled lazily, so the register-size cap is lifted to the
    size of the largest triple multiplication without materializing anything.

    Returns:
        list: mismatch dicts {op, n, granularity, expected, reported}; empty when all agree
    """
    mismatches = []
    for n in range(1, n_max + 1):
        model = build_product_model(n)
        max_dim = 2 ** (3 * n)
        reported = {"add": build_addition(model, max_dim=max_dim), "mul": build_multiplication_triple(model, max_dim=max_dim)}
        for granularity in granularities:
            for op, arithmetic in reported.items():
                expected = count_resources("multisuccessor", op, n, granularity).count
                got = arithmetic.count(granularity)
                if got != expected:
                    mismatches.append({"op": op, "n": n, "granularity": granularity, "expected": expected, "reported": got})
    if mismatches:
        logger.warning(f"{len(mismatches)} resource counts disagree with the builders")
    return mismatches
