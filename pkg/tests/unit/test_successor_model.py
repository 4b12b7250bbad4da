# tests/unit/test_successor_model.py

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import unittest

import numpy as np

from src.hilbert_core.operators import DimensionLimitError
from src.hilbert_core.states import StateVector
from src.representations.encoding import build_entangled_encoding
from src.successor_model.model import (
    BitFunction,
    OrderingError,
    ParameterSet,
    Polarity,
    UnclassifiableStateError,
    build_product_model,
    classify_state,
    derive_ordering,
    family_values,
    number_state,
    state_from_bits,
)
from src.successor_model.properties import PROPERTY_TITLES, check_all_properties, check_recursion_property, check_successor_properties


class TestProductModel(unittest.TestCase):
    def setUp(self):
        self.model = build_product_model(3)

    def test_ordering_and_zero(self):
        self.assertEqual(self.model.ordering, ("a1", "a2", "a3"))
        self.assertEqual(self.model.zero.support(), [0])
        self.assertEqual(self.model.dim, 8)

    def test_successor_is_shift_by_power_of_two(self):
        # V_{a_j} maps e_x to e_{x + 2^(j-1) mod 2^n}
        for j, label in enumerate(self.model.ordering):
            np.testing.assert_array_equal(self.model.V[label].index_map, (np.arange(8) + 2**j) % 8)

    def test_ordering_ignores_construction_order(self):
        shuffled = build_product_model(3, construction_order=[2, 0, 1])
        self.assertEqual(shuffled.params.labels, ("a3", "a1", "a2"))
        self.assertEqual(shuffled.ordering, ("a1", "a2", "a3"))

    def test_custom_labels(self):
        model = build_product_model(2, labels=("low", "high"))
        self.assertEqual(model.ordering, ("low", "high"))

    def test_invalid_sizes(self):
        with self.assertRaises(ValueError):
            build_product_model(0)
        with self.assertRaises(DimensionLimitError):
            build_product_model(11)
        with self.assertRaises(ValueError):
            build_product_model(2, construction_order=[0, 0])

    def test_parameter_set_rejects_duplicates(self):
        with self.assertRaises(ValueError):
            ParameterSet(("a1", "a1"))
        self.assertEqual(ParameterSet.default(2).labels, ("a1", "a2"))

    def test_number_states_round_trip(self):
        for value in range(self.model.dim):
            bits = classify_state(self.model, number_state(self.model, value))
            self.assertEqual(bits.to_int(self.model.ordering), value)
        np.testing.assert_array_equal(family_values(self.model), np.arange(8))

    def test_classify_rejects_superposition(self):
        state = StateVector.superposition(8, {0: 1.0, 1: 1.0})
        with self.assertRaises(UnclassifiableStateError):
            classify_state(self.model, state)

    def test_classify_honours_tolerance(self):
        leak = 1e-5
        state = StateVector([np.sqrt(1 - leak**2), leak, 0, 0, 0, 0, 0, 0])
        with self.assertRaises(UnclassifiableStateError):
            classify_state(self.model, state)
        bits = classify_state(self.model, state, tol=1e-4)
        self.assertEqual(bits.to_int(self.model.ordering), 0)
        np.testing.assert_array_equal(family_values(self.model, tol=1e-4), np.arange(8))


class TestEntangledModel(unittest.TestCase):
    def setUp(self):
        self.model = build_entangled_encoding(2).model

    def test_classify_paired_state(self):
        state = StateVector(np.array([0, 1, 1, 0]) / np.sqrt(2))
        bits = classify_state(self.model, state)
        self.assertEqual(bits.as_tuple(self.model.ordering), (1, 0))
        self.assertEqual(bits.to_int(self.model.ordering), 1)

    def test_state_from_bits(self):
        state = state_from_bits(self.model, BitFunction.from_tuple((1, 0), self.model.ordering))
        np.testing.assert_allclose(state.amps, np.array([0, 1, 1, 0]) / np.sqrt(2), atol=1e-10)
        zero = state_from_bits(self.model, BitFunction.from_tuple((0, 0), self.model.ordering))
        np.testing.assert_allclose(zero.amps, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-10)
        for value in range(4):
            bits = BitFunction.from_int(value, self.model.ordering)
            self.assertEqual(classify_state(self.model, state_from_bits(self.model, bits)), bits)


class TestBitFunction(unittest.TestCase):
    def test_int_round_trip(self):
        ordering = ("a1", "a2", "a3")
        bits = BitFunction.from_int(6, ordering)
        self.assertEqual(bits.as_tuple(ordering), (0, 1, 1))
        self.assertEqual(bits.to_int(ordering), 6)
        self.assertIs(bits.polarity("a1"), Polarity.ALPHA)
        self.assertIs(bits.polarity("a3"), Polarity.GAMMA)

    def test_value_equality(self):
        self.assertEqual(BitFunction.from_mapping({"a2": 1, "a1": 0}), BitFunction.from_mapping({"a1": 0, "a2": 1}))

    def test_invalid_bits(self):
        with self.assertRaises(ValueError):
            BitFunction.from_mapping({"a1": 2})
        with self.assertRaises(ValueError):
            BitFunction.from_int(8, ("a1", "a2", "a3"))
        with self.assertRaises(ValueError):
            BitFunction.from_tuple((0, 1), ("a1",))


class TestProperties(unittest.TestCase):
    def test_product_models_pass_all_twelve(self):
        for n in range(1, 6):
            report = check_all_properties(build_product_model(n))
            self.assertTrue(report.passed, f"n={n} failed {report.failed()}")
            self.assertEqual([result.number for result in report.results], list(range(1, 13)))

    def test_report_dict(self):
        report = check_all_properties(build_product_model(2))
        entry = report.to_dict()["properties"][2]
        self.assertEqual(entry["number"], 3)
        self.assertEqual(entry["title"], PROPERTY_TITLES[3])
        self.assertEqual(entry["detail"], {"a_m": "a2"})

    def test_duplicated_successor_breaks_the_chain(self):
        model = build_product_model(3)
        broken = model.with_operators(V={"a2": model.V["a1"]})
        self.assertIsNone(broken.ordering)
        with self.assertRaises(OrderingError):
            derive_ordering(broken)
        report = check_all_properties(broken)
        self.assertFalse(report.passed)
        self.assertIn(4, report.failed())
        self.assertIn(12, report.failed())

    def test_swapped_projections_fail_recursion(self):
        model = build_product_model(3)
        alpha, gamma = model.projector("a1", Polarity.ALPHA), model.projector("a1", Polarity.GAMMA)
        swapped = model.with_operators(P={("a1", Polarity.ALPHA): gamma, ("a1", Polarity.GAMMA): alpha})
        self.assertTrue(check_successor_properties(swapped).passed)
        recursion = check_recursion_property(swapped)
        self.assertFalse(recursion.passed)
        self.assertEqual(recursion.result(12).witness, ["a1"])

    def test_involution_is_last_parameter(self):
        report = check_successor_properties(build_product_model(4))
        self.assertEqual(report.result(3).detail["a_m"], "a4")
        self.assertEqual(report.result(6).detail["a_l"], "a1")


if __name__ == "__main__":
    unittest.main()
