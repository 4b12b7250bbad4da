# src/resource_profiler/fitting.py

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from src.resource_profiler.costs import CostKind, CostModel
from src.utils.logger import get_logger

MIN_POINTS = 5
FIT_R2 = 0.99

POLYNOMIAL = "polynomial"
EXPONENTIAL = "exponential"
INCONCLUSIVE = "inconclusive"

logger = get_logger(__name__)


@dataclass(frozen=True)
class ScalingFit:
    """
    Polynomial or exponential verdict on a count sequence.

    `parameter` is the degree (polynomial) or base (exponential) and
    `cost_model` the constants, both from the regression over
    `asymptotic_range`, the upper half of the n-range. Both are None for an
    inconclusive fit.
    """

    verdict: str
    parameter: float | None
    r2: float
    polynomial_r2: float
    exponential_r2: float
    cost_model: CostModel | None
    n_range: tuple
    asymptotic_range: tuple | None = None

    def to_dict(self, scheme=None, op=None):
        params = {}
        if self.verdict == POLYNOMIAL:
            params["degree"] = self.parameter
        elif self.verdict == EXPONENTIAL:
            params["base"] = self.parameter
        if self.cost_model is not None:
            params["cost_model"] = self.cost_model.to_dict()
            params["asymptotic_n_range"] = list(self.asymptotic_range)
        return {"scheme": scheme, "op": op, "verdict": self.verdict, "params": params, "r2": self.r2}


def _regress(x, y):
    """Linear regression of y on x, as (slope, intercept, r²); a constant y is an exact fit."""
    if np.ptp(y) == 0:
        return 0.0, float(y[0]), 1.0
    result = stats.linregress(x, y)
    return float(result.slope), float(result.intercept), float(result.rvalue**2)


def _series(traces):
    by_n = {}
    for trace in traces:
        if trace.n in by_n and by_n[trace.n] != trace.count:
            raise ValueError(f"Conflicting counts at n={trace.n}: {by_n[trace.n]} and {trace.count}")
        by_n[trace.n] = trace.count
    n_values = np.array(sorted(by_n), dtype=float)
    counts = [by_n[n] for n in sorted(by_n)]
    return n_values, counts


def fit_scaling(traces, min_r2=FIT_R2):
    """
    Decide whether the counts of `traces` grow polynomially or exponentially in n.

    log(count) is regressed on log(n) and on n over the whole range; the
    regression with the higher R² wins, provided it reaches `min_r2`. The
    reported degree or base and the CostModel constants come from the same
    regression repeated over the upper half of the range.

    Raises:
        ValueError: fewer than five distinct n, or a non-positive count
    """
    n_values, counts = _series(traces)
    if len(n_values) < MIN_POINTS:
        err_msg = f"Scaling fit needs at least {MIN_POINTS} distinct n values, got {len(n_values)}"
        logger.error(err_msg)
        raise ValueError(err_msg)
    if any(count <= 0 for count in counts):
        err_msg = "Scaling fit needs positive counts"
        logger.error(err_msg)
        raise ValueError(err_msg)

    # math.log takes arbitrarily large integer counts
    log_n, log_counts = np.log(n_values), np.array([math.log(count) for count in counts])
    poly_slope, _, poly_r2 = _regress(log_n, log_counts)
    exp_slope, _, exp_r2 = _regress(n_values, log_counts)
    n_range = (int(n_values[0]), int(n_values[-1]))

    upper = slice(len(n_values) // 2, None)
    asymptotic_range = (int(n_values[upper][0]), int(n_values[-1]))
    if poly_r2 >= exp_r2 or poly_slope == exp_slope == 0.0:
        verdict, r2 = POLYNOMIAL, poly_r2
        slope, intercept, _ = _regress(log_n[upper], log_counts[upper])
        parameter = slope
        cost_model = CostModel(c=float(np.exp(-intercept)), kind=CostKind.POLYNOMIAL, k=max(slope, 0.0))
    else:
        verdict, r2 = EXPONENTIAL, exp_r2
        slope, intercept, _ = _regress(n_values[upper], log_counts[upper])
        parameter = float(np.exp(slope))
        cost_model = CostModel(c=float(np.exp(-intercept)), kind=CostKind.EXPONENTIAL, K=parameter) if parameter > 1 else None

    if r2 < min_r2 or cost_model is None:
        logger.info(f"Scaling fit over n={n_range} inconclusive (polynomial R²={poly_r2:.4f}, exponential R²={exp_r2:.4f})")
        return ScalingFit(INCONCLUSIVE, None, max(poly_r2, exp_r2), poly_r2, exp_r2, None, n_range)

    logger.debug(f"Scaling fit over n={n_range}: {verdict} {parameter:.4f} (R²={r2:.4f})")
    return ScalingFit(verdict, parameter, r2, poly_r2, exp_r2, cost_model, n_range, asymptotic_range)
