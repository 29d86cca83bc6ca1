"""
Word Evaluator

Stage 2 of a scan: realize one word on the configured torus, keep it only
if its checks commute, and record (n, k) plus the distance screen.
"""

from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict

from src.config import ScanConfig
from src.errors import DirectionalCodeError
from src.tools.layouts import (
    Layout,
    canonical_layout,
    enumerate_coset_layouts,
    row_alternating_layout,
    translation_permutations,
)
from src.tools.parameters import code_parameters
from src.tools.pattern import effective_support, support_pattern, word_lattice
from src.tools.torus import build_code, verify_commutation
from src.tools.word import DirectionWord, format_word

CSV_COLUMNS = ["word", "w", "n", "k", "dX", "dZ", "support"]


class ScanRecord(BaseModel):
    """One commuting instance found by a scan."""

    model_config = ConfigDict(frozen=True)

    word: str
    w: int
    n: int
    k: int
    dX: str
    dZ: str
    support: int
    layout: str = "row-alt"

    def sort_key(self) -> Tuple:
        best = min(distance_value(self.dX), distance_value(self.dZ))
        return (-best, -self.k, self.w, self.word, self.layout)


class Rejected(BaseModel):
    model_config = ConfigDict(frozen=True)

    word: str
    reason: str
    layout: Optional[str] = None


def distance_value(text: str) -> float:
    """'4' -> 4, '>4' -> 4.5, '-' (k = 0) -> -1."""
    if text == "-":
        return -1.0
    if text.startswith(">"):
        return int(text[1:]) + 0.5
    return float(int(text))


def evaluate_word(
    w: DirectionWord, cfg: ScanConfig, layout: Optional[Layout] = None
) -> Union[ScanRecord, Rejected]:
    """Evaluate under `layout` (row alternation by default); failures become Rejected."""
    t = cfg.torus
    lay = layout or row_alternating_layout(t)
    text = format_word(w)
    try:
        code = build_code(w, t, lay, strict_wrap=cfg.strict_wrap)
        if not verify_commutation(code):
            return Rejected(word=text, reason="checks do not commute", layout=lay.descriptor)
        params = code_parameters(code, cfg.w_max)
    except DirectionalCodeError as e:
        return Rejected(word=text, reason=str(e), layout=lay.descriptor)
    return ScanRecord(
        word=text,
        w=len(w),
        n=params.n,
        k=params.k,
        dX=str(params.d_x),
        dZ=str(params.d_z),
        support=len(effective_support(support_pattern(w))),
        layout=lay.descriptor,
    )


def evaluate_word_layouts(w: DirectionWord, cfg: ScanConfig) -> List[Union[ScanRecord, Rejected]]:
    """Evaluate every translation-canonical coset-constant layout of the word."""
    t = cfg.torus
    try:
        lattice = word_lattice(w)
        translations = translation_permutations(t, lattice)
        layouts = {}
        for lay in enumerate_coset_layouts(t, lattice):
            canonical = canonical_layout(lay, translations)
            layouts.setdefault(canonical.descriptor, canonical)
    except DirectionalCodeError as e:
        return [Rejected(word=format_word(w), reason=str(e))]
    return [evaluate_word(w, cfg, layouts[key]) for key in sorted(layouts)]
