# src/reporting/report_schema.py

import yaml
from jsonschema import ValidationError, validate

from src.utils.logger import get_logger

logger = get_logger(__name__)


class SchemaValidator:
    """
    Validates a document against a JSON schema and keeps the messages of the last run.

    Subclasses set SCHEMA and may add checks in `_validate_rules`.
    """

    SCHEMA = {}

    def __init__(self, logger=None):
        self.logger = logger or get_logger(__name__)
        self.validation_errors = []

    def validate(self, document):
        """
        Returns:
            bool: True if the document is valid; messages are kept in self.validation_errors
        """
        self.validation_errors = []
        if isinstance(document, str):
            try:
                document = yaml.safe_load(document)
            except yaml.YAMLError as e:
                self.validation_errors.append(f"Invalid YAML format: {str(e)}")
                return False
        try:
            validate(instance=document, schema=self.SCHEMA)
        except ValidationError as e:
            location = "/".join(str(part) for part in e.absolute_path) or "<root>"
            self.validation_errors.append(f"Schema validation failed at {location}: {e.message}")
            self.logger.error(f"Schema validation failed at {location}: {e.message}")
            return False
        return self._validate_rules(document)

    def _validate_rules(self, document):
        return True

    def get_errors(self):
        return self.validation_errors


class ReportValidator(SchemaValidator):
    """Checks a report dict before it is written."""

    SCHEMA = {
        "type": "object",
        "required": ["version", "config", "checks", "timings"],
        "properties": {
            "version": {"type": "string", "pattern": "^\\d+\\.\\d+\\.\\d+$"},
            "config": {"type": "object"},
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "paper_tag", "pass", "witnesses", "detail"],
                    "properties": {
                        "name": {"type": "string", "minLength": 1},
                        "paper_tag": {"type": "string", "minLength": 1},
                        "pass": {"type": "boolean"},
                        "witnesses": {"type": "array"},
                        "detail": {"type": "object"},
                    },
                },
            },
            "timings": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}},
        },
    }

    def _validate_rules(self, document):
        names = [check["name"] for check in document["checks"]]
        if names != sorted(names) or len(set(names)) != len(names):
            self.validation_errors.append("Check names must be unique and sorted")
            self.logger.error("Check names must be unique and sorted")
            return False
        return True


_TOLERANCE = {"type": "number", "exclusiveMinimum": 0}
_LIMIT = {"type": "integer", "minimum": 1}


class ConfigValidator(SchemaValidator):
    """Checks a loaded configuration dict; unknown sections are allowed."""

    SCHEMA = {
        "type": "object",
        "properties": {
            "tolerances": {
                "type": "object",
                "properties": {
                    "operator": _TOLERANCE,
                    "classify": _TOLERANCE,
                    "schmidt": _TOLERANCE,
                    "amplitude": _TOLERANCE,
                    "decode_fidelity": {"type": "number", "exclusiveMinimum": 0.5, "maximum": 1},
                    "fit_r2": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                },
                "additionalProperties": False,
            },
            "limits": {
                "type": "object",
                "properties": {
                    "max_dim": _LIMIT,
                    "dense_cap": _LIMIT,
                    "single_register_n": _LIMIT,
                    "pair_n": _LIMIT,
                    "triple_n": _LIMIT,
                    "quadruple_n": _LIMIT,
                    "dense_compare_n": _LIMIT,
                    "profile_n": _LIMIT,
                },
                "additionalProperties": False,
            },
            "defaults": {
                "type": "object",
                "properties": {
                    "encoding": {"type": "string", "enum": ["product", "entangled"]},
                    "policy": {"type": "string", "enum": ["strict", "exclude-wrap"]},
                    "granularity": {"type": "string", "enum": ["coarse", "fine"]},
                    "format": {"type": "string", "enum": ["json", "csv", "text"]},
                },
                "additionalProperties": False,
            },
            "parallelism": {"type": "object", "properties": {"max_workers": _LIMIT}},
            "logging": {
                "type": "object",
                "properties": {
                    "level": {"type": "string", "enum": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]},
                    "file": {"type": ["string", "null"]},
                },
            },
        },
    }
