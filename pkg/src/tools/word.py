"""
Direction Word Tool

Parses and formats compressed direction words ("NE2N", "NE^2N"), applies
the word symmetry group (square dihedral relabelings, reversal with
inversion, cyclic shifts) and computes canonical representatives.

Lexicographic comparisons use the fixed letter order N < E < S < W.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby, product
from typing import Dict, FrozenSet, Iterator, List, Tuple

import numpy as np

from src.errors import SymmetryError, WordParseError

LETTERS = "NESW"
STEPS: Dict[str, Tuple[int, int]] = {
    "N": (0, 1),
    "E": (1, 0),
    "S": (0, -1),
    "W": (-1, 0),
}
LETTER_OF_STEP = {step: letter for letter, step in STEPS.items()}
INVERSE = {"N": "S", "S": "N", "E": "W", "W": "E"}
_ORDER = {letter: i for i, letter in enumerate(LETTERS)}


@dataclass(frozen=True)
class DirectionWord:
    """A route d_1 ... d_w of cardinal unit steps."""

    letters: Tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a direction word needs at least one letter")
        bad = [letter for letter in self.letters if letter not in STEPS]
        if bad:
            raise ValueError(f"invalid letters {bad!r}")

    @classmethod
    def of(cls, raw: str) -> "DirectionWord":
        return cls(tuple(raw))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self, compressed=True)

    @property
    def steps(self) -> List[Tuple[int, int]]:
        return [STEPS[letter] for letter in self.letters]

    @property
    def raw(self) -> str:
        return "".join(self.letters)

    def sort_key(self) -> Tuple[int, ...]:
        return tuple(_ORDER[letter] for letter in self.letters)


def parse_word(text: str) -> DirectionWord:
    """
    Parse a compressed word.

    Grammar: (LETTER exponent?)+ with LETTER in N/E/S/W and exponent
    '^'? DIGITS, DIGITS >= 1. Error positions are 0-based offsets into
    the stripped text.
    """
    source = text.strip()
    if not source:
        raise WordParseError("empty word", 0)

    letters: List[str] = []
    i = 0
    while i < len(source):
        ch = source[i]
        if ch in STEPS:
            letters.append(ch)
            i += 1
            continue
        if ch == "^" or ch.isdigit():
            start = i
            if not letters or (i > 0 and source[i - 1] not in STEPS):
                raise WordParseError("exponent with no preceding letter", start)
            if ch == "^":
                i += 1
            digits_start = i
            while i < len(source) and source[i].isdigit():
                i += 1
            digits = source[digits_start:i]
            if not digits:
                raise WordParseError("'^' must be followed by digits", start)
            count = int(digits)
            if count == 0:
                raise WordParseError("exponent must be at least 1", digits_start)
            letters.extend(letters[-1] for _ in range(count - 1))
            continue
        raise WordParseError(f"illegal character {ch!r}", i)
    return DirectionWord(tuple(letters))


def format_word(w: DirectionWord, compressed: bool = True) -> str:
    """
    Render a word, by default with runs of a letter written as an exponent.

    Args:
        w: Word to render
        compressed: Write "NE2N" instead of "NEEN"

    Returns:
        Text that parse_word maps back to w
    """
    if not compressed:
        return w.raw
    parts = []
    for letter, run in groupby(w.letters):
        count = len(list(run))
        parts.append(letter if count == 1 else f"{letter}{count}")
    return "".join(parts)


def is_closed(w: DirectionWord) -> bool:
    """True when the route returns to its start (cyclic shifts preserve P(W) up to translation)."""
    x = sum(step[0] for step in w.steps)
    y = sum(step[1] for step in w.steps)
    return x == 0 and y == 0


def has_backtrack(w: DirectionWord) -> bool:
    """A letter directly followed by its inverse, e.g. NS."""
    return any(INVERSE[a] == b for a, b in zip(w.letters, w.letters[1:]))


# Generators of the square symmetry group acting on Z^2.
_ROTATE = np.array([[0, 1], [-1, 0]], dtype=np.int64)  # clockwise: N -> E -> S -> W
_REFLECT = np.array([[-1, 0], [0, 1]], dtype=np.int64)  # x -> -x: E <-> W


@dataclass(frozen=True)
class Dihedral:
    """
    A square symmetry: reflect (E <-> W) when `reflected`, then rotate
    clockwise `rotation` quarter turns.
    """

    rotation: int = 0
    reflected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rotation", self.rotation % 4)

    @classmethod
    def all(cls) -> List["Dihedral"]:
        return [cls(r, f) for f, r in product((False, True), range(4))]

    @property
    def matrix(self) -> np.ndarray:
        m = np.linalg.matrix_power(_ROTATE, self.rotation)
        return m @ _REFLECT if self.reflected else m

    def apply_vector(self, v: Tuple[int, int]) -> Tuple[int, int]:
        x, y = self.matrix @ np.array(v, dtype=np.int64)
        return int(x), int(y)

    def permute(self, letter: str) -> str:
        return _letter_table(self)[letter]

    def __mul__(self, other: "Dihedral") -> "Dihedral":
        product_matrix = self.matrix @ other.matrix
        for g in Dihedral.all():
            if np.array_equal(g.matrix, product_matrix):
                return g
        raise AssertionError("square symmetries are closed under composition")

    @property
    def inverse(self) -> "Dihedral":
        for g in Dihedral.all():
            if (g * self).is_identity:
                return g
        raise AssertionError("every square symmetry is invertible")

    @property
    def is_identity(self) -> bool:
        return self.rotation == 0 and not self.reflected


@lru_cache(maxsize=None)
def _letter_table(g: Dihedral) -> Dict[str, str]:
    return {letter: LETTER_OF_STEP[g.apply_vector(step)] for letter, step in STEPS.items()}


@dataclass(frozen=True)
class SymmetryElement:
    dihedral: Dihedral = Dihedral()
    reversed: bool = False
    shift: int = 0


def apply_symmetry(w: DirectionWord, g: SymmetryElement) -> DirectionWord:
    """Cyclic shift, then optional reversal-with-inversion, then the dihedral relabeling."""
    if not 0 <= g.shift < len(w):
        raise SymmetryError(f"shift {g.shift} out of range for a word of length {len(w)}")
    letters = w.letters[g.shift:] + w.letters[: g.shift]
    if g.reversed:
        letters = tuple(INVERSE[letter] for letter in reversed(letters))
    return DirectionWord(tuple(g.dihedral.permute(letter) for letter in letters))


def symmetry_elements(length: int, include_cyclic: bool = True) -> Iterator[SymmetryElement]:
    """16 elements per shift: reversal on or off times the eight square symmetries."""
    shifts = range(length) if include_cyclic else (0,)
    for shift in shifts:
        for rev in (False, True):
            for d in Dihedral.all():
                yield SymmetryElement(dihedral=d, reversed=rev, shift=shift)


def word_orbit(w: DirectionWord, include_cyclic: bool = True) -> FrozenSet[DirectionWord]:
    return frozenset(apply_symmetry(w, g) for g in symmetry_elements(len(w), include_cyclic))


def canonical_word(w: DirectionWord, include_cyclic: bool = True) -> DirectionWord:
    """
    Lexicographically least word (N < E < S < W) in the orbit of w.

    Args:
        w: Any word
        include_cyclic: Also quotient by cyclic shifts; these preserve the
            support pattern only for closed routes

    Returns:
        The class representative
    """
    return min(word_orbit(w, include_cyclic), key=DirectionWord.sort_key)
