# tests/unit/test_verification_controller.py

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import unittest
from unittest.mock import patch

from src.arithmetic_ops.addition import addition_alternate
from src.arithmetic_ops.doubling import build_doubling
from src.hilbert_core.operators import DimensionLimitError
from src.reporting.report_schema import ReportValidator
from src.representations.encoding import build_product_encoding
from src.successor_model.properties import PropertyReport, PropertyResult
from src.utils.config import Config
from src.verification_controller import VerificationController, check_name


class TestVerificationController(unittest.TestCase):
    def setUp(self):
        self.controller = VerificationController(Config())

    def names(self, report):
        return [check["name"] for check in report.to_dict()["checks"]]

    def test_check_name(self):
        self.assertEqual(check_name(3, "axiom-1"), "n03/axiom-1")

    def test_caps(self):
        with self.assertRaises(DimensionLimitError):
            self.controller.require_n(5, "triple_n")
        with self.assertRaises(DimensionLimitError):
            self.controller.run("verify-axioms", [5])
        with self.assertRaises(DimensionLimitError):
            self.controller.run("verify-arithmetic", [4], ops=["mul-unitary"])
        with self.assertRaises(ValueError):
            self.controller.run("unknown", [2])

    def test_select_ops(self):
        self.assertEqual(self.controller.select_ops(3), ["add", "double", "mul", "mul-unitary"])
        self.assertEqual(self.controller.select_ops(5), ["add", "double"])
        self.assertEqual(self.controller.select_ops(7), ["double"])
        self.assertEqual(self.controller.select_ops(2, ["mul"]), ["mul"])

    def test_encodings_are_cached(self):
        self.assertIs(self.controller.encoding("product", 2), self.controller.encoding("product", 2))
        with self.assertRaises(ValueError):
            self.controller.encoding("binary", 2)

    def test_build(self):
        report = self.controller.run("build", [2], encoding="entangled")
        self.assertTrue(report.passed)
        self.assertEqual(self.names(report), ["n02/build", "n02/encoding-roundtrip"])
        detail = report.checks[0].detail if report.checks[0].name == "n02/build" else report.checks[1].detail
        self.assertEqual(detail["ordering"], ["a1", "a2"])
        self.assertEqual(len(detail["numbers"]["0"]), 2)

    def test_properties_over_range(self):
        report = self.controller.run("verify-properties", [1, 2])
        self.assertTrue(report.passed)
        self.assertEqual(len(report.checks), 24)
        self.assertIn("n01/property-12", self.names(report))
        self.assertEqual(sorted(report.timings), ["n01/properties", "n02/properties"])

    def test_axioms_strict_passes_with_expected_failures(self):
        report = self.controller.run("verify-axioms", [2], policy="strict")
        self.assertTrue(report.passed)
        first = next(check for check in report.checks if check.name == "n02/axiom-1")
        self.assertFalse(first.detail["holds"])
        self.assertTrue(first.detail["expected_failure"])
        self.assertEqual(first.witnesses, [(3, 0)])

    def test_arithmetic_groups(self):
        report = self.controller.run("verify-arithmetic", [2], encoding="entangled")
        self.assertTrue(report.passed, report.failed())
        names = self.names(report)
        for name in ("addition-oracle", "addition-alternate", "addition-conjugation", "doubling-oracle", "doubling-diagonal", "doubling-closed-form"):
            self.assertIn(f"n02/{name}", names)
        self.assertIn("n02/multiplication-oracle-triple", names)
        self.assertIn("n02/multiplication-accumulate-oracle-triple", names)
        self.assertIn("n02/quadruple-unitarity", names)

    def test_closed_form_detail(self):
        report = self.controller.run("verify-arithmetic", [3], ops=["double"])
        check = next(check for check in report.checks if check.name == "n03/doubling-closed-form")
        self.assertTrue(check.passed)
        self.assertEqual(check.detail["zero_from_h"], 3)
        self.assertFalse(check.detail["printed_form_matches_at_h"])
        self.assertTrue(check.detail["printed_form_matches_at_h_plus_1"])

    def test_entanglement(self):
        for kind in ("product", "entangled"):
            report = self.controller.run("certify-entanglement", [3], encoding=kind)
            self.assertTrue(report.passed, kind)

    def test_report_is_schema_valid(self):
        report = self.controller.run("report", [2])
        validator = ReportValidator()
        self.assertTrue(validator.validate(report.to_dict()), validator.get_errors())
        self.assertTrue(report.passed)

    def test_failed_property_surfaces(self):
        failing = PropertyReport([PropertyResult(4, False, ["a1"])])
        with patch("src.verification_controller.check_all_properties", return_value=failing) as check_all:
            report = self.controller.run("verify-properties", [2])
        check_all.assert_called_once()
        self.assertFalse(report.passed)
        self.assertEqual(report.failed(), ["n02/property-04"])
        self.assertEqual(report.checks[0].witnesses, ["a1"])

    def test_profile(self):
        report, traces = self.controller.run_profile(["unary"], ["add"], list(range(2, 9)))
        self.assertTrue(report.passed)
        self.assertEqual([trace.count for trace in traces], [2**n - 1 for n in range(2, 9)])
        check = report.checks[0]
        self.assertEqual(check.name, "profile/unary-add")
        self.assertEqual(check.detail["fit"]["verdict"], "exponential")
        self.assertIn("average_counts", check.detail)

    def test_profile_skips_fit_below_five_points(self):
        report, _ = self.controller.run_profile(["multisuccessor"], ["mul"], [2, 3], granularity="coarse")
        names = self.names(report)
        self.assertEqual(names, ["profile/builder-counts", "profile/multisuccessor-mul"])
        check = next(check for check in report.checks if check.name == "profile/multisuccessor-mul")
        self.assertIsNone(check.detail["fit"])
        self.assertEqual(check.detail["counts"], [4, 6])
        self.assertTrue(report.passed)

    def test_profile_cap(self):
        with self.assertRaises(DimensionLimitError):
            self.controller.run_profile(["unary"], ["add"], list(range(1, 1101)))
        report, traces = self.controller.run_profile(["unary"], ["add"], list(range(60, 65)))
        self.assertTrue(report.passed)
        self.assertEqual(traces[-1].count, 2**64 - 1)

    def test_classify_tolerance_from_config(self):
        config = Config()
        config.set("tolerances", {"classify": 1e-6})
        controller = VerificationController(config)
        with patch("src.verification_controller.build_product_encoding", wraps=build_product_encoding) as encode, patch(
            "src.verification_controller.addition_alternate", wraps=addition_alternate
        ) as alternate, patch("src.verification_controller.build_doubling", wraps=build_doubling) as doubling:
            report = controller.run("verify-arithmetic", [2], ops=["add", "double"])
        self.assertTrue(report.passed)
        self.assertEqual(encode.call_args.kwargs["classify_tol"], 1e-6)
        self.assertEqual(alternate.call_count, 16)
        self.assertTrue(all(call.args[3] == 1e-6 for call in alternate.call_args_list))
        self.assertEqual(doubling.call_args.kwargs["tol"], 1e-6)


if __name__ == "__main__":
    unittest.main()
