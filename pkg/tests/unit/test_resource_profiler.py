# tests/unit/test_resource_profiler.py

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import tempfile
import unittest

import numpy as np

from src.resource_profiler.costs import (
    CSV_COLUMNS,
    CostKind,
    CostModel,
    ResourceTrace,
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
from src.resource_profiler.fitting import EXPONENTIAL, INCONCLUSIVE, POLYNOMIAL, fit_scaling


class TestCounts(unittest.TestCase):
    def test_multisuccessor(self):
        self.assertEqual(count_resources("multisuccessor", "S", 4).count, 1)
        self.assertEqual(count_resources("multisuccessor", "add", 4).count, 4)
        self.assertEqual(count_resources("multisuccessor", "mul", 4).count, 20)
        self.assertEqual(count_resources("multisuccessor", "mul", 4, granularity="coarse").count, 8)

    def test_unary(self):
        trace = count_resources("unary", "add", 4)
        self.assertEqual(trace.count, 15)
        self.assertEqual(trace.average_count, 7.5)
        self.assertEqual(count_resources("unary", "mul", 3).count, 49)
        self.assertEqual(count_resources("unary", "S", 9).count, 1)

    def test_squarewell(self):
        self.assertEqual(count_resources("squarewell", "add", 3).count, 21)
        successor = count_resources("squarewell", "S", 3)
        self.assertEqual(successor.count, 21)
        self.assertEqual(successor.best_count, 1)
        self.assertEqual(count_resources("squarewell", "mul", 2).count, 20)

    def test_squarewell_geometry(self):
        self.assertEqual(squarewell_width(4, 8), 1.0)
        self.assertTrue(1e-31 <= squarewell_width(100, 1.0) <= 1e-29)
        self.assertEqual(squarewell_level_spacing(3), 16)
        with self.assertRaises(ValueError):
            squarewell_width(0, 1.0)
        with self.assertRaises(ValueError):
            squarewell_width(2, -1.0)

    def test_separation_grows_exponentially(self):
        ratios = {n: count_resources("unary", "add", n).count / count_resources("multisuccessor", "add", n).count for n in range(6, 13)}
        self.assertGreater(ratios[6], 2**3)
        self.assertGreater(ratios[7], 2**4)
        for n in range(6, 12):
            self.assertGreater(ratios[n + 1] / ratios[n], 1.5)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            count_resources("multisuccessor", "add", 0)
        with self.assertRaises(ValueError):
            count_resources("binary", "add", 3)
        with self.assertRaises(ValueError):
            count_resources("unary", "div", 3)

    def test_counts_match_builders(self):
        self.assertEqual(verify_against_builders(n_max=3), [])


class TestCostModel(unittest.TestCase):
    def test_estimates(self):
        linear = CostModel(c=2.0, kind="polynomial", k=1.0)
        self.assertIs(linear.kind, CostKind.POLYNOMIAL)
        self.assertEqual(time_estimate(linear, 10), 5.0)
        self.assertEqual(rate_estimate(linear, 10), 2.0)
        doubling = CostModel(c=1.0, kind=CostKind.EXPONENTIAL, K=2.0)
        self.assertEqual(time_estimate(doubling, 10), 1024.0)
        self.assertAlmostEqual(rate_estimate(doubling, 10), 10 / 1024)

    def test_validation(self):
        with self.assertRaises(ValueError):
            CostModel(c=0.0, kind="polynomial", k=1.0)
        with self.assertRaises(ValueError):
            CostModel(c=1.0, kind="polynomial", k=-1.0)
        with self.assertRaises(ValueError):
            CostModel(c=1.0, kind="exponential", K=1.0)
        with self.assertRaises(ValueError):
            time_estimate(CostModel(c=1.0, kind="polynomial", k=0.0), 0)

    def test_to_dict(self):
        self.assertEqual(CostModel(c=1.5, kind="exponential", K=3.0).to_dict(), {"c": 1.5, "kind": "exponential", "K": 3.0})


class TestFitting(unittest.TestCase):
    def test_multisuccessor_add_is_linear(self):
        fit = fit_scaling(profile("multisuccessor", "add", range(2, 13)))
        self.assertEqual(fit.verdict, POLYNOMIAL)
        self.assertAlmostEqual(fit.parameter, 1.0, delta=0.1)
        self.assertEqual(fit.n_range, (2, 12))

    def test_multisuccessor_mul_is_quadratic(self):
        fit = fit_scaling(profile("multisuccessor", "mul", range(2, 13)))
        self.assertEqual(fit.verdict, POLYNOMIAL)
        self.assertAlmostEqual(fit.parameter, 2.0, delta=0.15)

    def test_unary_add_doubles(self):
        fit = fit_scaling(profile("unary", "add", range(2, 13)))
        self.assertEqual(fit.verdict, EXPONENTIAL)
        self.assertAlmostEqual(fit.parameter, 2.0, delta=0.05)

    def test_squarewell_add_quadruples(self):
        fit = fit_scaling(profile("squarewell", "add", range(2, 13)))
        self.assertEqual(fit.verdict, EXPONENTIAL)
        self.assertAlmostEqual(fit.parameter, 4.0, delta=0.05)

    def test_constant_cost(self):
        fit = fit_scaling(profile("multisuccessor", "S", range(1, 7)))
        self.assertEqual(fit.verdict, POLYNOMIAL)
        self.assertEqual(fit.parameter, 0.0)
        self.assertEqual(fit.cost_model.k, 0.0)

    def test_unary_add_base_over_full_range(self):
        fit = fit_scaling(profile("unary", "add", range(1, 13)))
        self.assertEqual(fit.verdict, EXPONENTIAL)
        self.assertAlmostEqual(fit.parameter, 2.0, delta=0.05)
        self.assertEqual(fit.asymptotic_range, (7, 12))
        self.assertEqual(fit.cost_model.K, fit.parameter)

    def test_cost_model_reproduces_counts(self):
        traces = profile("unary", "add", range(1, 13))
        fit = fit_scaling(traces)
        low, high = fit.asymptotic_range
        for trace in traces:
            if low <= trace.n <= high:
                self.assertAlmostEqual(time_estimate(fit.cost_model, trace.n) / trace.count, 1.0, delta=0.05)

    def test_polynomial_cost_model_reproduces_counts(self):
        traces = profile("multisuccessor", "mul", range(1, 13))
        fit = fit_scaling(traces)
        low, high = fit.asymptotic_range
        for trace in traces:
            if low <= trace.n <= high:
                self.assertAlmostEqual(time_estimate(fit.cost_model, trace.n) / trace.count, 1.0, delta=0.05)

    def test_huge_counts(self):
        fit = fit_scaling(profile("unary", "mul", range(1000, 1101, 20)))
        self.assertEqual(fit.verdict, EXPONENTIAL)
        self.assertAlmostEqual(fit.parameter, 4.0, delta=0.05)

    def test_verdict_stable_under_shift(self):
        for scheme in ("multisuccessor", "unary", "squarewell"):
            for op in ("S", "add", "mul"):
                with self.subTest(scheme=scheme, op=op):
                    base = fit_scaling(profile(scheme, op, range(3, 13)))
                    shifted = fit_scaling(profile(scheme, op, range(5, 15)))
                    self.assertNotEqual(base.verdict, INCONCLUSIVE)
                    self.assertEqual(base.verdict, shifted.verdict)

    def test_noise_is_inconclusive(self):
        counts = [5, 1, 7, 2, 9, 1, 6]
        traces = [ResourceTrace("unary", "add", n, "fine", count) for n, count in zip(range(1, 8), counts)]
        fit = fit_scaling(traces)
        self.assertEqual(fit.verdict, INCONCLUSIVE)
        self.assertIsNone(fit.cost_model)
        self.assertEqual(fit.to_dict("unary", "add")["params"], {})

    def test_needs_five_points(self):
        with self.assertRaises(ValueError):
            fit_scaling(profile("unary", "add", range(1, 5)))

    def test_conflicting_counts(self):
        traces = [ResourceTrace("unary", "add", 3, "fine", 7), ResourceTrace("unary", "add", 3, "fine", 8)]
        with self.assertRaises(ValueError):
            fit_scaling(traces)

    def test_fit_dict(self):
        fit = fit_scaling(profile("squarewell", "add", range(2, 10)))
        entry = fit.to_dict("squarewell", "add")
        self.assertEqual(entry["scheme"], "squarewell")
        self.assertEqual(entry["verdict"], EXPONENTIAL)
        self.assertIn("base", entry["params"])
        self.assertEqual(entry["params"]["cost_model"]["kind"], "exponential")
        self.assertGreaterEqual(entry["r2"], 0.99)


class TestExport(unittest.TestCase):
    def test_csv(self):
        traces = profile("unary", "add", [3, 4])
        text = traces_to_csv(traces)
        self.assertEqual(text, "scheme,op,n,granularity,count\nunary,add,3,fine,7\nunary,add,4,fine,15\n")

    def test_csv_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "traces.csv")
            text = traces_to_csv(profile("multisuccessor", "mul", [2]), path)
            with open(path, encoding="utf-8", newline="") as file:
                self.assertEqual(file.read(), text)

    def test_frame(self):
        frame = traces_to_frame(profile("squarewell", "S", range(1, 4)))
        self.assertEqual(list(frame.columns), CSV_COLUMNS)
        np.testing.assert_array_equal(frame["count"].to_numpy(), [1, 5, 21])


if __name__ == "__main__":
    unittest.main()
