# workers package
from .word_enumerator import enumerate_words
from .evaluator import Rejected, ScanRecord, evaluate_word, evaluate_word_layouts

__all__ = ["enumerate_words", "evaluate_word", "evaluate_word_layouts", "ScanRecord", "Rejected"]
