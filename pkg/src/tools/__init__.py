# tools package
from .word import DirectionWord, canonical_word, format_word, parse_word
from .pattern import support_pattern, odd_difference_set, word_lattice, is_realizable
from .torus import CheckerboardTorus, CodeInstance, build_code, verify_commutation
from .layouts import Layout, parse_layout, row_alternating_layout
from .parameters import CodeParameters, code_parameters
from .qc import RingSpec, predicted_k, collapse_k, qc_cross_check
from .certificates import certify

__all__ = [
    "DirectionWord",
    "canonical_word",
    "format_word",
    "parse_word",
    "support_pattern",
    "odd_difference_set",
    "word_lattice",
    "is_realizable",
    "CheckerboardTorus",
    "CodeInstance",
    "build_code",
    "verify_commutation",
    "Layout",
    "parse_layout",
    "row_alternating_layout",
    "CodeParameters",
    "code_parameters",
    "RingSpec",
    "predicted_k",
    "collapse_k",
    "qc_cross_check",
    "certify",
]
