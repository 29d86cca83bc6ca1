"""
Ancilla Layout Tool

A layout assigns every ancilla an X or Z check. Row alternation uses the
parity of y; coset-constant layouts assign one type per coset of a word's
odd-difference lattice, which is exactly the family where all checks
commute.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import DegenerateLatticeError, IncompatibleTorusError, LatticeParityError
from src.tools.pattern import IntegerLattice, Vec, coset_label
from src.tools.torus import CheckerboardTorus, ancilla_index, data_index

ROW_ALTERNATING = "row-alt"


@dataclass(frozen=True)
class Layout:
    """
    `types[i]` is "X" or "Z" for the ancilla with ancilla index i.

    `descriptor` is "row-alt" or "coset:<bits>" (bit 0 = X, 1 = Z, one bit
    per coset in label order).
    """

    torus: CheckerboardTorus
    types: Tuple[str, ...]
    descriptor: str
    lattice: Optional[IntegerLattice] = None
    coset_bits: Optional[Tuple[int, ...]] = None

    def check_type(self, site: Vec) -> str:
        return self.types[ancilla_index(self.torus, site)]

    def count(self, kind: str) -> int:
        return sum(1 for t in self.types if t == kind)


def row_alternating_layout(t: CheckerboardTorus) -> Layout:
    types = tuple("X" if y % 2 == 0 else "Z" for _, y in t.ancilla_sites())
    return Layout(t, types, ROW_ALTERNATING)


def check_torus_compatible(t: CheckerboardTorus, l: IntegerLattice) -> None:
    """
    Raise unless ancilla cosets of l are well defined on t.

    Raises:
        DegenerateLatticeError: l has rank below 2
        LatticeParityError: l mixes data and ancilla sites
        IncompatibleTorusError: (Lx, 0) or (0, Ly) is not in l
    """
    if l.lattice_rank < 2:
        raise DegenerateLatticeError(f"lattice of rank {l.lattice_rank} has infinitely many cosets")
    if not l.is_even():
        raise LatticeParityError("lattice contains a vector with odd coordinate sum")
    if (t.lx, 0) not in l or (0, t.ly) not in l:
        raise IncompatibleTorusError(
            f"torus {t} periods are not in the lattice spanned by {list(l.basis)}; "
            "cosets are not well defined on this torus"
        )


def ancilla_cosets(t: CheckerboardTorus, l: IntegerLattice) -> Tuple[List[Vec], List[int]]:
    """Sorted coset labels and, per ancilla index, the position of its label."""
    check_torus_compatible(t, l)
    site_labels = [coset_label(l, site) for site in t.ancilla_sites()]
    labels = sorted(set(site_labels))
    position = {label: i for i, label in enumerate(labels)}
    return labels, [position[label] for label in site_labels]


def coset_layout(t: CheckerboardTorus, l: IntegerLattice, bits: Sequence[int]) -> Layout:
    """One Pauli type per ancilla coset of l, in sorted label order (0 = X, 1 = Z)."""
    labels, membership = ancilla_cosets(t, l)
    if len(bits) != len(labels):
        raise ValueError(f"expected {len(labels)} coset bits, got {len(bits)}")
    bits = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("coset bits must be 0 (X) or 1 (Z)")
    types = tuple("Z" if bits[c] else "X" for c in membership)
    descriptor = "coset:" + "".join(str(b) for b in bits)
    return Layout(t, types, descriptor, lattice=l, coset_bits=bits)


def parse_layout(descriptor: str, t: CheckerboardTorus, l: Optional[IntegerLattice] = None) -> Layout:
    """Build a layout from a CLI descriptor: 'row-alt' or 'coset:<bits>'."""
    if descriptor == ROW_ALTERNATING:
        return row_alternating_layout(t)
    if descriptor.startswith("coset:"):
        if l is None:
            raise ValueError("coset layouts need the word's lattice")
        raw = descriptor[len("coset:"):].upper().replace("X", "0").replace("Z", "1")
        if not raw or set(raw) - {"0", "1"}:
            raise ValueError(f"bad coset bit pattern in {descriptor!r}")
        return coset_layout(t, l, [int(b) for b in raw])
    raise ValueError(f"unknown layout {descriptor!r}; use 'row-alt' or 'coset:<bits>'")


def enumerate_coset_layouts(t: CheckerboardTorus, l: IntegerLattice) -> List[Layout]:
    """All 2^(c-1) labelings with the first coset fixed to X (global X/Z swap quotiented)."""
    labels, _ = ancilla_cosets(t, l)
    c = len(labels)
    return [coset_layout(t, l, (0,) + rest) for rest in product((0, 1), repeat=c - 1)]


def translation_permutations(t: CheckerboardTorus, l: IntegerLattice) -> List[Tuple[int, ...]]:
    """Coset permutations induced by translations that preserve the ancilla sublattice."""
    labels, membership = ancilla_cosets(t, l)
    representative: Dict[int, Vec] = {}
    for site, c in zip(t.ancilla_sites(), membership):
        representative.setdefault(c, site)
    position = {label: i for i, label in enumerate(labels)}
    (a, _), (_, height) = l.basis
    perms = set()
    for tx, ty in product(range(a), range(height)):
        if (tx + ty) % 2:
            continue
        perms.add(
            tuple(
                position[coset_label(l, (representative[i][0] + tx, representative[i][1] + ty))]
                for i in range(len(labels))
            )
        )
    return sorted(perms)


def _normalize(bits: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(1 - b for b in bits) if bits and bits[0] == 1 else bits


def canonical_layout(lay: Layout, translations: Sequence[Sequence[int]]) -> Layout:
    """Lexicographically smallest X-first bit pattern over the translation orbit."""
    if lay.coset_bits is None or lay.lattice is None:
        raise ValueError("canonical_layout needs a coset-constant layout")
    bits = lay.coset_bits
    perms = list(translations) or [tuple(range(len(bits)))]
    best = min(_normalize(tuple(bits[p] for p in perm)) for perm in perms)
    return coset_layout(lay.torus, lay.lattice, best)


def layout_grid(lay: Layout) -> np.ndarray:
    """(Ly, Lx) array: 0 on data sites, 1 for X ancillas, 2 for Z ancillas."""
    t = lay.torus
    grid = np.zeros((t.ly, t.lx), dtype=np.int8)
    for (x, y), kind in zip(t.ancilla_sites(), lay.types):
        grid[y, x] = 1 if kind == "X" else 2
    return grid


def layout_symmetry_translations(lay: Layout) -> List[Vec]:
    """Even-parity torus translations tau with layout(a + tau) = layout(a) for every ancilla."""
    t = lay.torus
    grid = layout_grid(lay)
    found = []
    for ty in range(t.ly):
        for tx in range(ty % 2, t.lx, 2):
            if np.array_equal(np.roll(grid, shift=(ty, tx), axis=(0, 1)), grid):
                found.append((tx, ty))
    return found


def data_orbit_representatives(lay: Layout) -> List[int]:
    """Smallest data index of each orbit under the layout's translation symmetries."""
    t = lay.torus
    translations = layout_symmetry_translations(lay)
    seen = np.zeros(t.n, dtype=bool)
    reps = []
    for i, (x, y) in enumerate(t.data_sites()):
        if seen[i]:
            continue
        reps.append(i)
        for tx, ty in translations:
            seen[data_index(t, (x + tx, y + ty))] = True
    return reps
