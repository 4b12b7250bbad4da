# tests/unit/test_main.py

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import argparse
import json
import tempfile
import unittest
from unittest.mock import patch

from src.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, ConfigError, apply_tolerances, parse_n, run, setup_config
from src.reporting.report_builder import CheckResult, Report
from src.utils.config import Config


class TestArguments(unittest.TestCase):
    def test_parse_n(self):
        self.assertEqual(parse_n("3"), [3])
        self.assertEqual(parse_n("2..5"), [2, 3, 4, 5])
        for text in ("0", "5..2", "x", "1..y"):
            with self.assertRaises(argparse.ArgumentTypeError):
                parse_n(text)

    def test_tolerance_overrides(self):
        config = apply_tolerances(Config(), ["fit_r2=0.95", "operator=1e-9"])
        self.assertEqual(config.tolerance("fit_r2"), 0.95)
        self.assertEqual(config.tolerance("operator"), 1e-9)
        for override in ("fit_r2", "speed=1", "operator=small", "decode_fidelity=0.2"):
            with self.assertRaises(ConfigError):
                apply_tolerances(Config(), [override])

    def test_missing_config_file(self):
        with self.assertRaises(ConfigError):
            setup_config("/nonexistent/config.yaml")

    def test_invalid_config_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "config.yaml")
            with open(path, "w") as file:
                file.write("limits:\n  pair_n: 0\n")
            with self.assertRaises(ConfigError):
                setup_config(path)


class TestRun(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.output = os.path.join(self.tmpdir.name, "report.json")

    def tearDown(self):
        self.tmpdir.cleanup()

    def read_report(self):
        with open(self.output, encoding="utf-8") as file:
            return json.load(file)

    def test_properties_pass(self):
        self.assertEqual(run(["verify-properties", "--n", "2", "--output", self.output]), EXIT_OK)
        payload = self.read_report()
        self.assertEqual(payload["config"]["command"], "verify-properties")
        self.assertEqual(payload["config"]["encoding"], "product")
        self.assertEqual(len(payload["checks"]), 12)

    def test_strict_axioms_exit_zero(self):
        code = run(["verify-axioms", "--n", "2", "--policy", "strict", "--encoding", "entangled", "--output", self.output])
        self.assertEqual(code, EXIT_OK)
        first = next(check for check in self.read_report()["checks"] if check["name"] == "n02/axiom-1")
        self.assertEqual(first["witnesses"], [[3, 0]])

    def test_text_format(self):
        output = os.path.join(self.tmpdir.name, "report.txt")
        self.assertEqual(run(["certify-entanglement", "--n", "2..3", "--format", "text", "--output", output]), EXIT_OK)
        with open(output, encoding="utf-8") as file:
            lines = file.read().splitlines()
        self.assertIn("PASS n02/entanglement [entanglement-certificate]", lines)
        self.assertEqual(lines[-1], "2/2 checks passed")

    def test_build_export(self):
        export = os.path.join(self.tmpdir.name, "encoding.json")
        self.assertEqual(run(["build", "--n", "2", "--encoding", "entangled", "--export", export, "--output", self.output]), EXIT_OK)
        with open(export, encoding="utf-8") as file:
            table = json.load(file)
        self.assertEqual(table["kind"], "entangled")
        self.assertEqual(len(table["states"]), 4)

    def test_profile_csv(self):
        output = os.path.join(self.tmpdir.name, "traces.csv")
        code = run(["profile", "--n", "1..6", "--scheme", "squarewell", "--op", "add", "--format", "csv", "--output", output])
        self.assertEqual(code, EXIT_OK)
        with open(output, encoding="utf-8", newline="") as file:
            lines = file.read().split("\n")
        self.assertEqual(lines[0], "scheme,op,n,granularity,count")
        self.assertEqual(lines[3], "squarewell,add,3,fine,21")
        self.assertEqual(len(lines), 8)
        with open(os.path.join(self.tmpdir.name, "traces.fit.json"), encoding="utf-8") as file:
            fits = json.load(file)
        self.assertEqual(len(fits), 1)
        self.assertEqual(fits[0]["scheme"], "squarewell")
        self.assertEqual(fits[0]["op"], "add")
        self.assertEqual(fits[0]["verdict"], "exponential")
        self.assertAlmostEqual(fits[0]["params"]["base"], 4.0, delta=0.05)
        self.assertIn("r2", fits[0])

    def test_profile_above_cap_is_usage_error(self):
        output = os.path.join(self.tmpdir.name, "traces.csv")
        code = run(["profile", "--n", "1..1100", "--scheme", "unary", "--op", "add", "--format", "csv", "--output", output])
        self.assertEqual(code, EXIT_USAGE)

    def test_usage_errors(self):
        self.assertEqual(run(["bogus"]), EXIT_USAGE)
        self.assertEqual(run(["verify-properties"]), EXIT_USAGE)
        self.assertEqual(run(["verify-properties", "--n", "0"]), EXIT_USAGE)
        self.assertEqual(run(["verify-axioms", "--n", "5", "--output", self.output]), EXIT_USAGE)
        self.assertEqual(run(["verify-arithmetic", "--n", "4", "--op", "mul-unitary", "--output", self.output]), EXIT_USAGE)
        self.assertEqual(run(["verify-properties", "--n", "2", "--format", "csv", "--output", self.output]), EXIT_USAGE)
        self.assertEqual(run(["verify-properties", "--n", "2", "--tolerance", "speed=1"]), EXIT_USAGE)
        self.assertEqual(run(["verify-properties", "--n", "2", "--config", "/nonexistent.yaml"]), EXIT_USAGE)
        self.assertEqual(run(["certify-entanglement", "--n", "1", "--encoding", "entangled", "--output", self.output]), EXIT_USAGE)

    def test_unwritable_output(self):
        self.assertEqual(run(["verify-properties", "--n", "2", "--output", self.tmpdir.name]), EXIT_USAGE)

    def test_version(self):
        with patch("sys.stdout"):
            self.assertEqual(run(["--version"]), EXIT_OK)

    def test_failed_check_exits_one(self):
        report = Report("1.0.0", {})
        report.add_check(CheckResult("n02/property-01", "property-1", False, ["a1"]))
        with patch("src.main.VerificationController") as controller_class:
            controller_class.return_value.run.return_value = report
            code = run(["verify-properties", "--n", "2", "--output", self.output])
        self.assertEqual(code, EXIT_CHECK_FAILED)
        self.assertFalse(self.read_report()["checks"][0]["pass"])


if __name__ == "__main__":
    unittest.main()
