"""
Structural Certificates Tool

Explicit witnesses for the case-word family on 12m x 6m tori under row
alternation: zero-sum sets of check rows (lower bound on k) and weight-2m
motif operators commuting with every opposite-type check (upper bound on d).
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from operator import xor
from typing import Dict, FrozenSet, List, Optional, Tuple

from src.errors import CertificateNotApplicableError
from src.tools.gf2linalg import RowSpace
from src.tools.layouts import row_alternating_layout
from src.tools.pattern import Vec, support_pattern
from src.tools.torus import CheckerboardTorus, CodeInstance, build_code, data_index
from src.tools.word import DirectionWord, format_word

RESIDUE_MODULUS = 6
# Anchor-row residue classes (mod 6) whose rows are summed; X rows have even y.
X_RESIDUE_FAMILIES: Tuple[FrozenSet[int], ...] = (frozenset({0, 2}), frozenset({0, 4}))
Z_RESIDUE_FAMILIES: Tuple[FrozenSet[int], ...] = (frozenset({1, 3}), frozenset({1, 5}))

MOTIF_SHIFT: Vec = (4, 2)
MOTIF_PERIOD: Vec = (12, 6)


@dataclass(frozen=True)
class RowRelation:
    kind: str
    residues: FrozenSet[int]
    rows: Tuple[int, ...]
    sums_to_zero: bool

    def as_dict(self) -> Dict[str, object]:
        return {
            "type": self.kind,
            "anchor_y_mod_6": sorted(self.residues),
            "rows": list(self.rows),
            "sums_to_zero": self.sums_to_zero,
        }


@dataclass(frozen=True)
class DependencyCertificate:
    x_relations: Tuple[RowRelation, ...]
    z_relations: Tuple[RowRelation, ...]

    @property
    def verified(self) -> bool:
        relations = self.x_relations + self.z_relations
        return all(r.sums_to_zero and r.rows for r in relations) and all(
            len({r.rows for r in group}) == len(group) for group in (self.x_relations, self.z_relations)
        )


def _residue_property_holds(offsets_y: Counter, residues: FrozenSet[int]) -> bool:
    """Every data row y meets an even number of offsets from anchors with y_a mod 6 in `residues`."""
    for r in range(RESIDUE_MODULUS):
        hits = sum(offsets_y[(r - s) % RESIDUE_MODULUS] for s in residues)
        if hits % 2:
            return False
    return True


def dependency_certificate(w: DirectionWord, t: CheckerboardTorus) -> DependencyCertificate:
    """Two X-row and two Z-row sets selected by anchor y mod 6, each verified to sum to zero."""
    if t.ly % RESIDUE_MODULUS:
        raise CertificateNotApplicableError(
            f"Ly = {t.ly} is not a multiple of 6, so the torus does not support the residue classes"
        )
    offsets_y = Counter(q[1] % RESIDUE_MODULUS for q in support_pattern(w).offsets)
    for residues in X_RESIDUE_FAMILIES + Z_RESIDUE_FAMILIES:
        if not _residue_property_holds(offsets_y, residues):
            raise CertificateNotApplicableError(
                f"offset rows of {format_word(w)} do not cancel for anchor classes {sorted(residues)} mod 6"
            )

    code = build_code(w, t, row_alternating_layout(t))

    def relations(kind: str, families: Tuple[FrozenSet[int], ...]) -> Tuple[RowRelation, ...]:
        anchors = code.x_anchors if kind == "X" else code.z_anchors
        rows = (code.hx if kind == "X" else code.hz).row_ints()
        found = []
        for residues in families:
            chosen = tuple(i for i, a in enumerate(anchors) if a[1] % RESIDUE_MODULUS in residues)
            total = reduce(xor, (rows[i] for i in chosen), 0)
            found.append(RowRelation(kind, residues, chosen, total == 0))
        return tuple(found)

    return DependencyCertificate(relations("X", X_RESIDUE_FAMILIES), relations("Z", Z_RESIDUE_FAMILIES))


def motif_operator(
    t: CheckerboardTorus,
    p: Vec,
    r: Vec = MOTIF_SHIFT,
    tvec: Vec = MOTIF_PERIOD,
    m: Optional[int] = None,
) -> FrozenSet[Vec]:
    """S(p) = {p + j*tvec, p + r + j*tvec : j < m}, reduced onto the torus."""
    count = m if m is not None else max(1, t.lx // MOTIF_PERIOD[0])
    sites = set()
    for j in range(count):
        for base in (p, (p[0] + r[0], p[1] + r[1])):
            site = t.reduce((base[0] + j * tvec[0], base[1] + j * tvec[1]))
            if not t.is_data(site):
                raise CertificateNotApplicableError(f"motif site {site} is not a data site")
            sites.add(site)
    return frozenset(sites)


def _support_int(t: CheckerboardTorus, support: FrozenSet[Vec]) -> int:
    return sum(1 << data_index(t, site) for site in support)


def motif_commutes(c: CodeInstance, support: FrozenSet[Vec], pauli: str = "X") -> bool:
    """An X (Z) operator on `support` overlaps every Z (X) check evenly."""
    checks = c.hz if pauli == "X" else c.hx
    x = _support_int(c.torus, support)
    return all(bin(row & x).count("1") % 2 == 0 for row in checks.row_ints())


@dataclass(frozen=True)
class MotifWitness:
    site: Vec
    pauli: str
    weight: int
    nontrivial: bool


def find_motifs(c: CodeInstance, m: int, r: Vec = MOTIF_SHIFT, tvec: Vec = MOTIF_PERIOD) -> List[MotifWitness]:
    """Every data site p whose motif commutes with all opposite-type checks, per Pauli type."""
    found = []
    opposite = {"X": c.hz.row_ints(), "Z": c.hx.row_ints()}
    same = {"X": RowSpace.of(c.hx), "Z": RowSpace.of(c.hz)}
    for p in c.torus.data_sites():
        support = motif_operator(c.torus, p, r, tvec, m)
        x = _support_int(c.torus, support)
        for pauli in ("X", "Z"):
            if all(bin(row & x).count("1") % 2 == 0 for row in opposite[pauli]):
                found.append(MotifWitness(p, pauli, len(support), x not in same[pauli]))
    return found


@dataclass(frozen=True)
class CertificationReport:
    word: DirectionWord
    m: int
    torus: CheckerboardTorus
    dependencies: DependencyCertificate
    motifs: Tuple[MotifWitness, ...] = field(default=())

    @property
    def logical_motifs(self) -> List[MotifWitness]:
        return [w for w in self.motifs if w.nontrivial]

    @property
    def k_certified(self) -> bool:
        return self.dependencies.verified

    @property
    def d_certified(self) -> bool:
        return bool(self.logical_motifs)

    @property
    def conclusion(self) -> str:
        parts = []
        if self.k_certified:
            parts.append("k >= 4")
        if self.d_certified:
            parts.append(f"d <= {2 * self.m}")
        if not parts:
            return "nothing certified"
        return " and ".join(parts) + " certified"

    def as_dict(self) -> Dict[str, object]:
        return {
            "word": format_word(self.word),
            "m": self.m,
            "torus": [self.torus.lx, self.torus.ly],
            "relations": [r.as_dict() for r in self.dependencies.x_relations + self.dependencies.z_relations],
            "motif_sites": [
                {"site": list(w.site), "pauli": w.pauli, "weight": w.weight, "nontrivial": w.nontrivial}
                for w in self.motifs
            ],
            "conclusion": self.conclusion,
        }


def certify(w: DirectionWord, m: int) -> CertificationReport:
    """
    Dependency and motif certificates on the 12m x 6m torus.

    Args:
        w: Word to certify; the residue families only fit the case word
        m: Torus scale, at least 1

    Returns:
        CertificationReport with k >= 4 and d <= 2m evidence

    Raises:
        CertificateNotApplicableError: the residue families do not cancel for w
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    t = CheckerboardTorus(12 * m, 6 * m)
    dependencies = dependency_certificate(w, t)
    code = build_code(w, t, row_alternating_layout(t))
    return CertificationReport(w, m, t, dependencies, tuple(find_motifs(code, m)))
