# src/resource_profiler/__init__.py

from .costs import (
    CostKind,
    CostModel,
    Granularity,
    Operation,
    ResourceTrace,
    Scheme,
    count_resources,
    profile,
    rate_estimate,
    squarewell_level_spacing,
    squarewell_width,
    time_estimate,
    traces_to_csv,
    traces_to_frame,
    verify_against_builders,
)
from .fitting import EXPONENTIAL, INCONCLUSIVE, POLYNOMIAL, ScalingFit, fit_scaling

__all__ = [
    "CostKind",
    "CostModel",
    "Granularity",
    "Operation",
    "ResourceTrace",
    "Scheme",
    "count_resources",
    "profile",
    "rate_estimate",
    "squarewell_level_spacing",
    "squarewell_width",
    "time_estimate",
    "traces_to_csv",
    "traces_to_frame",
    "verify_against_builders",
    "EXPONENTIAL",
    "INCONCLUSIVE",
    "POLYNOMIAL",
    "ScalingFit",
    "fit_scaling",
]
