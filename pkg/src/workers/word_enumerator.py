"""
Word Enumerator

Stage 1 of a scan: produce one representative direction word per
symmetry class, honoring the scan filters.
"""

from itertools import product
from typing import Iterator, Set, Tuple

from src.config import ScanConfig
from src.tools.pattern import support_pattern
from src.tools.word import LETTERS, DirectionWord, canonical_word, has_backtrack, is_closed


def passes_filters(w: DirectionWord, cfg: ScanConfig) -> bool:
    """Leading-N, backtrack and distinct-offset filters, each only when enabled."""
    if cfg.fix_first_n and w.letters[0] != "N":
        return False
    if cfg.no_backtrack and has_backtrack(w):
        return False
    if cfg.distinct_offsets and len(set(support_pattern(w).offsets)) != len(w):
        return False
    return True


def _candidates(length: int, fix_first_n: bool) -> Iterator[Tuple[str, ...]]:
    firsts = "N" if fix_first_n else LETTERS
    for first in firsts:
        for rest in product(LETTERS, repeat=length - 1):
            yield (first,) + rest


def enumerate_words(cfg: ScanConfig) -> Iterator[DirectionWord]:
    """
    Words in the length range, in lexicographic order (N < E < S < W),
    keeping the first filter-passing member of each canonical class.

    Cyclic shifts only join classes of closed routes; on an open route they
    change the support pattern, so open words are quotiented without them.
    """
    for length in cfg.lengths:
        seen: Set[Tuple[str, ...]] = set()
        for letters in _candidates(length, cfg.fix_first_n):
            w = DirectionWord(letters)
            if not passes_filters(w, cfg):
                continue
            key = canonical_word(w, cfg.include_cyclic and is_closed(w)).letters
            if key in seen:
                continue
            seen.add(key)
            yield w
