"""
Quasi-Cyclic Reduction Tool

Under row alternation every check of a translation-invariant pattern is a
shift of one block-circulant row. Writing data sites as q_0 + 2(i, j) and
q_1 + 2(i, j) with q_0 = (0, 0), q_1 = (1, 1), a check becomes a pair
(h0, h1) in R = F2[u, v] / (u^a - 1, v^b - 1), a = Lx/2, b = Ly/2, and
its stabilizer dependencies are the annihilator of that pair.

The ring variables are u, v throughout; other texts write them X, Y.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from src.tools.gf2linalg import BitMatrix, left_kernel_dim
from src.tools.layouts import row_alternating_layout
from src.tools.pattern import Vec, support_pattern
from src.tools.torus import CheckerboardTorus, build_code, data_index
from src.tools.word import DirectionWord, parse_word

X_ANCHOR: Vec = (1, 0)
Z_ANCHOR: Vec = (0, 1)
CASE_WORD = "NE2NE2N"


@dataclass(frozen=True)
class RingSpec:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"ring periods must be positive, got ({self.a}, {self.b})")

    @classmethod
    def for_torus(cls, t: CheckerboardTorus) -> "RingSpec":
        return cls(t.lx // 2, t.ly // 2)

    @property
    def size(self) -> int:
        return self.a * self.b


@dataclass(frozen=True, eq=False)
class RingElement:
    """Coefficient grid: grid[i, j] is the coefficient of u^i v^j."""

    ring: RingSpec
    grid: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.grid.shape != (self.ring.a, self.ring.b):
            raise ValueError(f"grid shape {self.grid.shape} does not match ring {self.ring}")
        self.grid.setflags(write=False)

    @classmethod
    def one(cls, ring: RingSpec) -> "RingElement":
        return cls.from_terms(ring, [(0, 0)])

    @classmethod
    def monomial(cls, ring: RingSpec, i: int, j: int) -> "RingElement":
        return cls.from_terms(ring, [(i, j)])

    @classmethod
    def from_terms(cls, ring: RingSpec, exponents: Iterable[Tuple[int, int]]) -> "RingElement":
        """Sum of monomials; repeated (reduced) exponents cancel."""
        grid = np.zeros((ring.a, ring.b), dtype=np.uint8)
        for i, j in exponents:
            grid[i % ring.a, j % ring.b] ^= 1
        return cls(ring, grid)

    def _require_same_ring(self, other: "RingElement") -> None:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._require_same_ring(other)
        return RingElement(self.ring, self.grid ^ other.grid)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._require_same_ring(other)
        acc = np.zeros_like(other.grid)
        for i, j in zip(*np.nonzero(self.grid)):
            acc ^= np.roll(other.grid, shift=(int(i), int(j)), axis=(0, 1))
        return RingElement(self.ring, acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and bool(np.array_equal(self.grid, other.grid))

    def __hash__(self) -> int:
        return hash((self.ring, self.grid.tobytes()))

    def is_zero(self) -> bool:
        return not bool(self.grid.any())

    def terms(self) -> List[Tuple[int, int]]:
        """Exponents (i, j) with coefficient 1, sorted by (j, i)."""
        return sorted(((int(i), int(j)) for i, j in zip(*np.nonzero(self.grid))), key=lambda e: (e[1], e[0]))

    def to_text(self, names: Tuple[str, str] = ("u", "v")) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(_monomial_text(i, j, names) for i, j in self.terms())

    def __str__(self) -> str:
        return self.to_text()


def _monomial_text(i: int, j: int, names: Tuple[str, str]) -> str:
    factors = []
    for exponent, name in ((i, names[0]), (j, names[1])):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors) or "1"


def ring_mul(a: RingElement, b: RingElement, r: RingSpec) -> RingElement:
    if a.ring != r or b.ring != r:
        raise ValueError(f"operands are not elements of {r}")
    return a * b


def horizontal_sum(r: RingSpec) -> RingElement:
    """S_u = 1 + u + ... + u^(a-1)."""
    return RingElement.from_terms(r, [(i, 0) for i in range(r.a)])


@dataclass(frozen=True)
class QcVector:
    h0: RingElement
    h1: RingElement

    def as_dict(self) -> Dict[str, str]:
        return {"h0": self.h0.to_text(), "h1": self.h1.to_text()}


def _split(anchor: Vec, q: Vec) -> Tuple[int, Tuple[int, int]]:
    """anchor + q = q_sigma + 2*delta; returns (sigma, delta)."""
    x, y = anchor[0] + q[0], anchor[1] + q[1]
    sigma = x % 2
    return sigma, ((x - sigma) // 2, (y - sigma) // 2)


def _check_vector(offsets: Iterable[Vec], anchor: Vec, r: RingSpec) -> QcVector:
    parts: Dict[int, List[Tuple[int, int]]] = {0: [], 1: []}
    for q in offsets:
        sigma, delta = _split(anchor, q)
        parts[sigma].append(delta)
    return QcVector(RingElement.from_terms(r, parts[0]), RingElement.from_terms(r, parts[1]))


def qc_check_vectors(w: DirectionWord, r: RingSpec) -> Tuple[QcVector, QcVector]:
    """(x_vector, z_vector) from the anchors a_X = (1, 0) and a_Z = (0, 1)."""
    offsets = support_pattern(w).offsets
    return _check_vector(offsets, X_ANCHOR, r), _check_vector(offsets, Z_ANCHOR, r)


def multiplication_matrix(v: QcVector, r: RingSpec) -> BitMatrix:
    """Row (i, j) (row-major) is (u^i v^j h0 | u^i v^j h1), flattened."""
    rows = []
    for i in range(r.a):
        for j in range(r.b):
            left = np.roll(v.h0.grid, shift=(i, j), axis=(0, 1)).reshape(-1)
            right = np.roll(v.h1.grid, shift=(i, j), axis=(0, 1)).reshape(-1)
            rows.append(np.concatenate([left, right]))
    return BitMatrix.from_dense(np.array(rows, dtype=np.uint8))


def annihilator_dim(v: QcVector, r: RingSpec) -> int:
    """dim of {f in R : f*h0 = f*h1 = 0}, the left kernel of the multiplication matrix."""
    return left_kernel_dim(multiplication_matrix(v, r))


def predicted_k(w: DirectionWord, r: RingSpec) -> int:
    """
    k predicted from the ring alone: ann(x_vector) + ann(z_vector).

    Args:
        w: Direction word
        r: Ring of the torus, periods (Lx/2, Ly/2)

    Returns:
        Predicted number of logical qubits under the row-alternating layout
    """
    x_vector, z_vector = qc_check_vectors(w, r)
    return annihilator_dim(x_vector, r) + annihilator_dim(z_vector, r)


def _poly_mod(a: int, b: int) -> int:
    while a and a.bit_length() >= b.bit_length():
        a ^= b << (a.bit_length() - b.bit_length())
    return a


def poly_gcd_degree(m: int) -> int:
    """deg gcd(1 + v + v^2, v^m - 1) over F2, polynomials as int bitsets."""
    if m < 1:
        raise ValueError("m must be at least 1")
    a, b = 0b111, (1 << m) | 1
    while b:
        a, b = b, _poly_mod(a, b)
    return a.bit_length() - 1


def annihilator_dim_gcd(r: RingSpec) -> int:
    """Closed-form dim Ann(h_X) of the case word on thin rectangles (Lx = 2 Ly)."""
    return poly_gcd_degree(r.b)


def collapse_k(d: int) -> int:
    """k of the case word on the (2d, d) torus: 4 when 6 | d, else 0."""
    if d < 2 or d % 2:
        raise ValueError(f"d must be even and at least 2, got {d}")
    return 2 * poly_gcd_degree(d // 2)


def case_word_closed_forms(r: RingSpec) -> Tuple[QcVector, QcVector]:
    """
    Factored check vectors of NE2NE2N with V = u^2 v:
    h_X = ((1+u) u v (1+V), 1+V+V^2), h_Z = (v (1+V+V^2), v (1+u) (1+V)).
    """
    one = RingElement.one(r)
    u = RingElement.monomial(r, 1, 0)
    v = RingElement.monomial(r, 0, 1)
    big_v = RingElement.monomial(r, 2, 1)
    tri = one + big_v + big_v * big_v
    x_vector = QcVector((one + u) * u * v * (one + big_v), tri)
    z_vector = QcVector(v * tri, v * (one + u) * (one + big_v))
    return x_vector, z_vector


@dataclass(frozen=True)
class SuReport:
    ring: RingSpec
    su_h0: RingElement
    su_h1: RingElement
    su_target: RingElement
    is_case_word: bool
    discrepancies: Tuple[str, ...] = ()

    @property
    def h0_annihilated(self) -> bool:
        return self.su_h0.is_zero()

    @property
    def h1_matches(self) -> bool:
        return self.su_h1 == self.su_target

    @property
    def verified(self) -> bool:
        return self.is_case_word and not self.discrepancies

    def as_dict(self) -> Dict[str, object]:
        return {
            "ring": [self.ring.a, self.ring.b],
            "su_h0": self.su_h0.to_text(),
            "su_h1": self.su_h1.to_text(),
            "su_times_1_v_v2": self.su_target.to_text(),
            "h0_annihilated": self.h0_annihilated,
            "h1_matches": self.h1_matches,
            "case_word": self.is_case_word,
            "discrepancies": list(self.discrepancies),
        }


def su_reduction_check(w: DirectionWord, r: RingSpec) -> SuReport:
    """
    S_u h0 and S_u h1 for the word's x_vector. For the case word the
    identities S_u h0 = 0, S_u h1 = S_u (1+v+v^2) and the factored check
    vectors are verified; every failure is listed, not raised.
    """
    x_vector, z_vector = qc_check_vectors(w, r)
    s_u = horizontal_sum(r)
    one = RingElement.one(r)
    v = RingElement.monomial(r, 0, 1)
    target = s_u * (one + v + v * v)
    report_h0 = s_u * x_vector.h0
    report_h1 = s_u * x_vector.h1

    is_case = w == parse_word(CASE_WORD)
    problems: List[str] = []
    if is_case:
        if not report_h0.is_zero():
            problems.append("S_u*h0 is nonzero")
        if report_h1 != target:
            problems.append("S_u*h1 differs from S_u*(1+v+v^2)")
        closed_x, closed_z = case_word_closed_forms(r)
        for name, got, want in (
            ("h_X0", x_vector.h0, closed_x.h0),
            ("h_X1", x_vector.h1, closed_x.h1),
            ("h_Z0", z_vector.h0, closed_z.h0),
            ("h_Z1", z_vector.h1, closed_z.h1),
        ):
            if got != want:
                problems.append(f"{name} = {got} but the factored form gives {want}")
    return SuReport(r, report_h0, report_h1, target, is_case, tuple(problems))


def pattern_polynomial(w: DirectionWord, t: CheckerboardTorus) -> RingElement:
    """Full-torus polynomial sum x^Qx y^Qy over P(W); text with names ('x', 'y')."""
    ring = RingSpec(t.lx, t.ly)
    return RingElement.from_terms(ring, support_pattern(w).offsets)


def qc_data_vector(f: RingElement, v: QcVector, t: CheckerboardTorus) -> np.ndarray:
    """Data-qubit vector (data_index order) of f * (h0, h1): h0 on q_0 + 2G, h1 on q_1 + 2G."""
    r = RingSpec.for_torus(t)
    if f.ring != r:
        raise ValueError(f"f lives in {f.ring}, torus {t} needs {r}")
    vector = np.zeros(t.n, dtype=np.uint8)
    for base, part in (((0, 0), f * v.h0), ((1, 1), f * v.h1)):
        for i, j in part.terms():
            vector[data_index(t, (base[0] + 2 * i, base[1] + 2 * j))] = 1
    return vector


@dataclass(frozen=True)
class QcCrossCheck:
    ann_x: int
    ann_z: int
    left_kernel_x: int
    left_kernel_z: int

    @property
    def passed(self) -> bool:
        return self.ann_x == self.left_kernel_x and self.ann_z == self.left_kernel_z

    def as_dict(self) -> Dict[str, object]:
        return {
            "ann_x": self.ann_x,
            "ann_z": self.ann_z,
            "left_kernel_x": self.left_kernel_x,
            "left_kernel_z": self.left_kernel_z,
            "verdict": "PASS" if self.passed else "FAIL",
        }


def qc_cross_check(w: DirectionWord, t: CheckerboardTorus, ring: Optional[RingSpec] = None) -> QcCrossCheck:
    """Annihilator dimensions against left-kernel dimensions of the directly built H_X, H_Z."""
    r = ring or RingSpec.for_torus(t)
    x_vector, z_vector = qc_check_vectors(w, r)
    code = build_code(w, t, row_alternating_layout(t))
    return QcCrossCheck(
        ann_x=annihilator_dim(x_vector, r),
        ann_z=annihilator_dim(z_vector, r),
        left_kernel_x=left_kernel_dim(code.hx),
        left_kernel_z=left_kernel_dim(code.hz),
    )
