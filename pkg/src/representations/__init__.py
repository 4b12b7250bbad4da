# src/representations/__init__.py

from .encoding import (
    DecodeError,
    NumberEncoding,
    build_entangled_encoding,
    build_model_encoding,
    build_product_encoding,
    compare_constructions,
    decode_columns,
    decode_number,
    encode_number,
    encoding_to_dict,
    state_from_dict_entry,
)
from .entanglement import ALL_ENTANGLED, ALL_PRODUCT, MIXED, EntanglementCertificate, build_entangling_unitary, certify_entanglement

__all__ = [
    "DecodeError",
    "NumberEncoding",
    "build_entangled_encoding",
    "build_model_encoding",
    "build_product_encoding",
    "compare_constructions",
    "decode_columns",
    "decode_number",
    "encode_number",
    "encoding_to_dict",
    "state_from_dict_entry",
    "ALL_ENTANGLED",
    "ALL_PRODUCT",
    "MIXED",
    "EntanglementCertificate",
    "build_entangling_unitary",
    "certify_entanglement",
]
