# tests/unit/test_representations.py

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import unittest

import numpy as np
from numpy.testing import assert_allclose

from src.arithmetic_ops.addition import build_addition
from src.arithmetic_ops.oracles import evaluate, verify_addition
from src.hilbert_core.predicates import is_unitary
from src.hilbert_core.states import StateVector
from src.representations.encoding import (
    DecodeError,
    build_entangled_encoding,
    build_product_encoding,
    compare_constructions,
    decode_columns,
    decode_number,
    encode_number,
    encoding_to_dict,
    state_from_dict_entry,
)
from src.representations.entanglement import ALL_ENTANGLED, ALL_PRODUCT, MIXED, EntanglementCertificate, build_entangling_unitary, certify_entanglement
from src.successor_model.properties import check_all_properties

ROOT_HALF = 1 / np.sqrt(2)


class TestEntanglingUnitary(unittest.TestCase):
    def test_pairs_complements(self):
        unitary = build_entangling_unitary(2)
        self.assertTrue(is_unitary(unitary))
        assert_allclose(unitary.matrix[:, 0], [ROOT_HALF, 0, 0, ROOT_HALF])
        assert_allclose(unitary.matrix[:, 3], [ROOT_HALF, 0, 0, -ROOT_HALF])

    def test_invalid_size(self):
        with self.assertRaises(ValueError):
            build_entangling_unitary(0)


class TestEncodings(unittest.TestCase):
    def setUp(self):
        self.product = build_product_encoding(2)
        self.entangled = build_entangled_encoding(2)

    def test_product_states_are_basis_vectors(self):
        for k in range(4):
            self.assertEqual(encode_number(self.product, k).support(), [k])

    def test_entangled_states(self):
        expected = {
            0: [ROOT_HALF, 0, 0, ROOT_HALF],
            1: [0, ROOT_HALF, ROOT_HALF, 0],
            2: [0, ROOT_HALF, -ROOT_HALF, 0],
            3: [ROOT_HALF, 0, 0, -ROOT_HALF],
        }
        for k, amps in expected.items():
            assert_allclose(encode_number(self.entangled, k).amps, amps, atol=1e-10)

    def test_entangled_model_passes_properties(self):
        self.assertTrue(check_all_properties(self.entangled.model).passed)
        self.assertEqual(self.entangled.model.ordering, ("a1", "a2"))

    def test_entangled_needs_two_sites(self):
        with self.assertRaises(ValueError):
            build_entangled_encoding(1)

    def test_encode_out_of_range(self):
        with self.assertRaises(ValueError):
            encode_number(self.product, 4)

    def test_decode_both_methods(self):
        for encoding in (self.product, self.entangled):
            for k in range(4):
                self.assertEqual(decode_number(encoding, encoding.states[k]), k)
                self.assertEqual(decode_number(encoding, encoding.states[k], method="adjoint"), k)
            np.testing.assert_array_equal(decode_columns(encoding, encoding.table()), np.arange(4))

    def test_decode_rejects_superposition(self):
        blend = StateVector((self.entangled.states[0].amps + self.entangled.states[1].amps) / np.sqrt(2))
        with self.assertRaises(DecodeError):
            decode_number(self.entangled, blend)
        # A product basis state overlaps two entangled numbers equally
        with self.assertRaises(DecodeError):
            decode_number(self.entangled, StateVector.basis(4, 1))
        self.assertEqual(decode_number(self.product, StateVector.basis(4, 1)), 1)
        with self.assertRaises(DecodeError):
            decode_number(self.entangled, StateVector.basis(8, 0))
        with self.assertRaises(ValueError):
            decode_number(self.entangled, self.entangled.states[0], method="nearest")

    def test_entangled_addition_example(self):
        model = self.entangled.model
        addition = build_addition(model)
        decoded, clean = evaluate(model, addition, [(1, 2)])
        np.testing.assert_array_equal(decoded, [[1, 3]])
        self.assertTrue(clean.all())
        self.assertTrue(verify_addition(model, addition).passed)

    def test_two_constructions_agree(self):
        self.assertLess(compare_constructions(self.entangled, build_addition), 1e-10)

    def test_export_round_trip(self):
        exported = encoding_to_dict(self.entangled)
        self.assertEqual(exported["kind"], "entangled")
        self.assertEqual(len(exported["states"]), 4)
        restored = state_from_dict_entry(exported["states"][3])
        assert_allclose(restored.amps, self.entangled.states[3].amps)


class TestEntanglementCertificate(unittest.TestCase):
    def test_product_encoding_is_all_product(self):
        certificate = certify_entanglement(build_product_encoding(3))
        self.assertEqual(certificate.verdict, ALL_PRODUCT)
        self.assertEqual(set(rank for row in certificate.ranks for rank in row), {1})

    def test_entangled_encoding_is_all_entangled(self):
        for n in (2, 3, 4):
            certificate = certify_entanglement(build_entangled_encoding(n))
            self.assertEqual(certificate.verdict, ALL_ENTANGLED)
            self.assertEqual(set(rank for row in certificate.ranks for rank in row), {2})
            self.assertEqual(len(certificate.ranks), 2**n)

    def test_single_site_register(self):
        certificate = certify_entanglement(build_product_encoding(1))
        self.assertEqual(certificate.ranks, ((), ()))
        self.assertEqual(certificate.verdict, ALL_PRODUCT)

    def test_mixed_verdict(self):
        certificate = EntanglementCertificate(n=2, kind="custom", ranks=((1, 1), (2, 2)))
        self.assertEqual(certificate.verdict, MIXED)
        self.assertEqual(certificate.to_dict()["ranks"], [[1, 1], [2, 2]])


if __name__ == "__main__":
    unittest.main()
