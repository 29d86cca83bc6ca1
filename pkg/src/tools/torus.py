"""
Checkerboard Torus Tool

Site bookkeeping on Z_Lx x Z_Ly (data sites x+y even, ancilla sites x+y
odd) and construction of the CSS code induced by a word and a layout.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Tuple

import numpy as np

from src.errors import TorusError, WrapCollisionError
from src.tools.gf2linalg import BitMatrix, mul_mod2
from src.tools.pattern import Vec, support_pattern
from src.tools.word import DirectionWord, format_word

if TYPE_CHECKING:
    from src.tools.layouts import Layout


@dataclass(frozen=True)
class CheckerboardTorus:
    lx: int
    ly: int

    def __post_init__(self):
        for name, value in (("Lx", self.lx), ("Ly", self.ly)):
            if value < 2 or value % 2:
                raise TorusError(f"{name} must be even and at least 2, got {value}")

    @property
    def n(self) -> int:
        return self.lx * self.ly // 2

    @property
    def half_width(self) -> int:
        return self.lx // 2

    def reduce(self, site: Vec) -> Vec:
        return (site[0] % self.lx, site[1] % self.ly)

    def is_data(self, site: Vec) -> bool:
        return (site[0] + site[1]) % 2 == 0

    def data_site(self, index: int) -> Vec:
        y, col = divmod(index, self.half_width)
        return (2 * col + y % 2, y)

    def ancilla_site(self, index: int) -> Vec:
        y, col = divmod(index, self.half_width)
        return (2 * col + (y + 1) % 2, y)

    def data_sites(self) -> List[Vec]:
        return [self.data_site(i) for i in range(self.n)]

    def ancilla_sites(self) -> List[Vec]:
        return [self.ancilla_site(i) for i in range(self.n)]

    def __str__(self) -> str:
        return f"{self.lx}x{self.ly}"


def data_index(t: CheckerboardTorus, site: Vec) -> int:
    """Row-major index (y outer, x inner) counting only data sites."""
    x, y = t.reduce(site)
    if not t.is_data((x, y)):
        raise ValueError(f"site {site} is an ancilla site")
    return y * t.half_width + x // 2


def ancilla_index(t: CheckerboardTorus, site: Vec) -> int:
    x, y = t.reduce(site)
    if t.is_data((x, y)):
        raise ValueError(f"site {site} is a data site")
    return y * t.half_width + x // 2


@dataclass(frozen=True, eq=False)
class CodeInstance:
    """
    A (word, torus, layout) realized as H_X and H_Z.

    Row r of H_X is measured by the ancilla x_anchors[r]; likewise for Z.
    """

    word: DirectionWord
    torus: CheckerboardTorus
    layout: "Layout"
    hx: BitMatrix
    hz: BitMatrix
    x_anchors: Tuple[Vec, ...]
    z_anchors: Tuple[Vec, ...]
    _row_of: Dict[Vec, Tuple[str, int]] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.torus.n

    def row_of_anchor(self, site: Vec) -> Tuple[str, int]:
        """('X' | 'Z', row index) of the check measured at an ancilla site."""
        return self._row_of[self.torus.reduce(site)]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "word": format_word(self.word, compressed=True),
            "lx": self.torus.lx,
            "ly": self.torus.ly,
            "layout": self.layout.descriptor,
            "hx": self.hx.row_supports(),
            "hz": self.hz.row_supports(),
        }


def check_support(w: DirectionWord, t: CheckerboardTorus, anchor: Vec, strict_wrap: bool = False) -> List[int]:
    """Sorted data indices of anchor + P(W) after mod-2 cancellation of coincident targets."""
    offsets = support_pattern(w).offsets
    targets = Counter(data_index(t, (anchor[0] + q[0], anchor[1] + q[1])) for q in offsets)
    if strict_wrap:
        distinct = {t.reduce((anchor[0] + q[0], anchor[1] + q[1])) for q in set(offsets)}
        if len(distinct) < len(set(offsets)):
            raise WrapCollisionError(
                f"offsets of {format_word(w)} collide on the {t} torus"
            )
    return sorted(i for i, mult in targets.items() if mult % 2 == 1)


def build_code(
    w: DirectionWord, t: CheckerboardTorus, lay: "Layout", strict_wrap: bool = False
) -> CodeInstance:
    """One check per ancilla; the layout routes it to H_X or H_Z."""
    x_rows, z_rows = [], []
    x_anchors, z_anchors = [], []
    row_of: Dict[Vec, Tuple[str, int]] = {}
    for i, anchor in enumerate(t.ancilla_sites()):
        support = check_support(w, t, anchor, strict_wrap)
        if lay.types[i] == "X":
            row_of[anchor] = ("X", len(x_rows))
            x_rows.append(support)
            x_anchors.append(anchor)
        else:
            row_of[anchor] = ("Z", len(z_rows))
            z_rows.append(support)
            z_anchors.append(anchor)
    return CodeInstance(
        word=w,
        torus=t,
        layout=lay,
        hx=BitMatrix.from_supports(x_rows, t.n),
        hz=BitMatrix.from_supports(z_rows, t.n),
        x_anchors=tuple(x_anchors),
        z_anchors=tuple(z_anchors),
        _row_of=row_of,
    )


def verify_commutation(c: CodeInstance) -> bool:
    """H_X H_Z^T == 0 over GF(2)."""
    return not overlap_parities(c).any()


def overlap_parities(c: CodeInstance) -> np.ndarray:
    """Entry (i, j) is |supp(X_i) & supp(Z_j)| mod 2."""
    if c.hx.rows == 0 or c.hz.rows == 0:
        return np.zeros((c.hx.rows, c.hz.rows), dtype=np.uint8)
    return mul_mod2(c.hx, c.hz.transpose()).to_dense()
