# src/reporting/__init__.py

from .report_builder import CheckResult, Report, round_significant, to_plain
from .report_schema import ConfigValidator, ReportValidator, SchemaValidator

__all__ = [
    "CheckResult",
    "Report",
    "round_significant",
    "to_plain",
    "ConfigValidator",
    "ReportValidator",
    "SchemaValidator",
]
