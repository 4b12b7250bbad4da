# src/reporting/report_builder.py

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.utils.file_handler import FileHandler

SIGNIFICANT_DIGITS = 3


def round_significant(value, digits=SIGNIFICANT_DIGITS):
    if value == 0 or not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def to_plain(value, digits=None):
    """JSON-ready copy of `value`: numpy scalars unwrapped, tuples as lists, floats rounded to `digits` significant digits when given."""
    if isinstance(value, dict):
        return {str(key): to_plain(item, digits) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item, digits) for item in value]
    if isinstance(value, np.ndarray):
        return [to_plain(item, digits) for item in value.tolist()]
    if isinstance(value, Enum):
        return value.value if isinstance(value.value, str) else value.name.lower()
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if digits is None else round_significant(float(value), digits)
    return value


@dataclass
class CheckResult:
    """
    One verification check of a run.

    Args:
        name: Unique check name, also the sort key of the report
        tag: Identifier of the construction the check exercises, e.g. "addition-oracle"
        passed: Whether the check passed
        witnesses: Inputs on which the check failed
        detail: Free-form numbers and flags describing the check
    """

    name: str
    tag: str
    passed: bool
    witnesses: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "name": self.name,
            "paper_tag": self.tag,
            "pass": bool(self.passed),
            "witnesses": to_plain(self.witnesses),
            "detail": to_plain(self.detail),
        }


class Report:
    """
    Result of one CLI run: version, config echo, checks and timings.

    Checks are emitted sorted by name and all timing data lives in the
    `timings` object, so two runs with the same config differ only there.
    """

    def __init__(self, version, config=None):
        self.version = version
        self.config = config or {}
        self.checks = []
        self.timings = {}

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def add_check(self, check):
        if any(existing.name == check.name for existing in self.checks):
            raise ValueError(f"Duplicate check name {check.name!r}")
        self.checks.append(check)

    def add_checks(self, checks):
        for check in checks:
            self.add_check(check)

    def record_timing(self, name, seconds):
        self.timings[name] = seconds

    def failed(self):
        return sorted(check.name for check in self.checks if not check.passed)

    def to_dict(self):
        return {
            "version": self.version,
            "config": to_plain(self.config),
            "checks": [check.to_dict() for check in sorted(self.checks, key=lambda check: check.name)],
            "timings": to_plain(self.timings, SIGNIFICANT_DIGITS),
        }

    def to_json(self):
        return FileHandler.dumps_json(self.to_dict())

    def to_text(self):
        lines = [f"version {self.version}"]
        for check in sorted(self.checks, key=lambda check: check.name):
            status = "PASS" if check.passed else "FAIL"
            lines.append(f"{status} {check.name} [{check.tag}]")
            for witness in check.witnesses:
                lines.append(f"    witness {to_plain(witness)}")
        lines.append(f"{len(self.checks) - len(self.failed())}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"
