"""
Support Pattern Tool

Geometry of a direction word: the support pattern Q_j = 2*S_{j-1} + d_j,
the pairwise difference multiset, the odd-multiplicity difference lattice
L(W) in Hermite normal form, the conservative torus admissibility bound,
and the inverse problem (which offset sets come from a single route).
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from src.errors import DegenerateLatticeError, LatticeParityError, RealizabilitySizeError
from src.tools.word import LETTER_OF_STEP, DirectionWord

Vec = Tuple[int, int]

# Sums of two cardinal steps that can separate consecutive offsets;
# (0, 0) is a backtrack, which revisits the previous offset.
TWO_STEP_SUMS: FrozenSet[Vec] = frozenset(
    {(0, 0), (2, 0), (-2, 0), (0, 2), (0, -2), (1, 1), (1, -1), (-1, 1), (-1, -1)}
)

DEFAULT_REALIZABILITY_BOUND = 10


def _add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def _sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class SupportPattern:
    offsets: Tuple[Vec, ...]

    @property
    def word_length(self) -> int:
        return len(self.offsets)


@dataclass(frozen=True)
class DifferenceMultiset:
    entries: Dict[Vec, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())


def support_pattern(w: DirectionWord) -> SupportPattern:
    """Offsets Q_j = 2S_{j-1} + d_j of the data qubits a check touches, in route order."""
    offsets = []
    position = (0, 0)
    for step in w.steps:
        offsets.append((2 * position[0] + step[0], 2 * position[1] + step[1]))
        position = _add(position, step)
    return SupportPattern(tuple(offsets))


def difference_multiset(p: SupportPattern) -> DifferenceMultiset:
    """Q_j - Q_i over index pairs i < j, repeated offsets included."""
    counts = Counter(_sub(qj, qi) for qi, qj in combinations(p.offsets, 2))
    return DifferenceMultiset(dict(counts))


def odd_difference_set(d: DifferenceMultiset) -> FrozenSet[Vec]:
    return frozenset(v for v, mult in d.entries.items() if mult % 2 == 1)


def effective_support(p: SupportPattern) -> List[Vec]:
    """Offsets surviving mod-2 cancellation on the infinite lattice."""
    counts = Counter(p.offsets)
    return sorted(q for q, mult in counts.items() if mult % 2 == 1)


def offsets_distinct_on_torus(p: SupportPattern, lx: int, ly: int) -> bool:
    """True iff no two offsets of the (set) pattern coincide modulo (lx, ly)."""
    distinct = set(p.offsets)
    reduced = {(q[0] % lx, q[1] % ly) for q in distinct}
    return len(reduced) == len(distinct)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    # x*a + y*b == g throughout the Euclidean recursion
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class IntegerLattice:
    """
    Sublattice of Z^2 in Hermite normal form.

    Rank 2 basis is ((a, 0), (b, c)) with a > 0, c > 0 and 0 <= b < a.
    Rank 1 basis is a single vector with positive leading nonzero
    y-coordinate, or (a, 0) with a > 0 when it lies on the x-axis.
    `index` is None when the lattice has infinite index.
    """

    basis: Tuple[Vec, ...]

    @property
    def lattice_rank(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> Optional[int]:
        if self.lattice_rank < 2:
            return None
        (a, _), (_, c) = self.basis
        return a * c

    def __contains__(self, v: Vec) -> bool:
        x, y = v
        if self.lattice_rank == 0:
            return x == 0 and y == 0
        if self.lattice_rank == 1:
            bx, by = self.basis[0]
            if by == 0:
                return y == 0 and x % bx == 0
            return y % by == 0 and x == (y // by) * bx
        (a, _), (b, c) = self.basis
        if y % c:
            return False
        return (x - (y // c) * b) % a == 0

    def reduce(self, v: Vec) -> Vec:
        """Canonical residue of v modulo a rank-2 lattice."""
        if self.lattice_rank < 2:
            raise DegenerateLatticeError(f"lattice of rank {self.lattice_rank} has no finite cosets")
        (a, _), (b, c) = self.basis
        q = v[1] // c
        return ((v[0] - q * b) % a, v[1] - q * c)

    def transform(self, matrix: Sequence[Sequence[int]]) -> "IntegerLattice":
        """Image under an integer 2x2 matrix acting on column vectors."""
        images = [
            (
                int(matrix[0][0]) * v[0] + int(matrix[0][1]) * v[1],
                int(matrix[1][0]) * v[0] + int(matrix[1][1]) * v[1],
            )
            for v in self.basis
        ]
        return lattice_from_generators(images)

    def is_even(self) -> bool:
        return all((v[0] + v[1]) % 2 == 0 for v in self.basis)


def lattice_from_generators(gens: Iterable[Vec]) -> IntegerLattice:
    """Integer span of `gens` in Hermite normal form (zero vectors are ignored)."""
    a = 0
    pivot: Optional[Vec] = None
    for x, y in gens:
        if y == 0:
            a = _gcd(a, x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        b, c = pivot
        s, t, g = _xgcd(c, y)
        pivot = (s * b + t * x, g)
        # the complementary unimodular row has zero y-coordinate
        a = _gcd(a, (y // g) * b - (c // g) * x)

    if pivot is not None and pivot[1] < 0:
        pivot = (-pivot[0], -pivot[1])
    if pivot is None:
        return IntegerLattice(((a, 0),) if a else ())
    if a == 0:
        return IntegerLattice((pivot,))
    return IntegerLattice(((a, 0), (pivot[0] % a, pivot[1])))


def _gcd(a: int, b: int) -> int:
    return abs(_xgcd(a, b)[2])


def word_lattice(w: DirectionWord) -> IntegerLattice:
    """Lattice spanned by the odd-multiplicity differences of P(w)."""
    return lattice_from_generators(odd_difference_set(difference_multiset(support_pattern(w))))


def ancilla_coset_count(l: IntegerLattice) -> int:
    if l.lattice_rank < 2:
        raise DegenerateLatticeError(f"lattice of rank {l.lattice_rank} has infinitely many cosets")
    if not l.is_even():
        raise LatticeParityError("lattice contains a vector with odd coordinate sum")
    return l.index // 2


def coset_label(l: IntegerLattice, site: Vec) -> Vec:
    """Equal labels iff the sites differ by a lattice vector."""
    return l.reduce(site)


def case_word_residue_label(site: Vec) -> Vec:
    """Explicit invariant (y mod 2, (x - y) mod 4) of span{(4,0),(2,2)}."""
    x, y = site
    return (y % 2, (x - y) % 4)


@dataclass(frozen=True)
class Realizable:
    word: DirectionWord
    ordering: Tuple[Vec, ...]


@dataclass(frozen=True)
class NotRealizable:
    reason: str
    position: Optional[int] = None

    def __str__(self) -> str:
        where = f" (offset {self.position})" if self.position is not None else ""
        return f"NOT REALIZABLE: {self.reason}{where}"


def reconstruct_word(offsets: Sequence[Vec]) -> Union[DirectionWord, NotRealizable]:
    """
    Recover the unique route with Q_1 = d_1 and d_{j+1} = (Q_{j+1} - Q_j) - d_j.

    Positions in the returned NotRealizable are 1-based offset indices.
    """
    if not offsets:
        return NotRealizable("empty offset list")
    first = tuple(offsets[0])
    if first not in LETTER_OF_STEP:
        return NotRealizable(f"first offset {first} is not a cardinal step", 1)
    letters = [LETTER_OF_STEP[first]]
    step = first
    for j in range(1, len(offsets)):
        delta = _sub(tuple(offsets[j]), tuple(offsets[j - 1]))
        if delta not in TWO_STEP_SUMS:
            return NotRealizable(f"difference {delta} is not a sum of two cardinal steps", j + 1)
        step = _sub(delta, step)
        if step not in LETTER_OF_STEP:
            return NotRealizable(f"recursion produced non-cardinal step {step}", j + 1)
        letters.append(LETTER_OF_STEP[step])
    return DirectionWord(tuple(letters))


def is_realizable(
    offsets: Iterable[Vec], max_size: int = DEFAULT_REALIZABILITY_BOUND
) -> Union[Realizable, NotRealizable]:
    """
    Search for a route whose offsets are exactly the given set.

    A route may visit an offset more than once, so the search runs over
    states (current offset, last step, offsets covered) rather than over
    orderings. The state space is finite, which makes the search complete.
    Starts are tried in lexicographic order and the shortest witness wins.

    Args:
        offsets: Offset set P (duplicates are ignored)
        max_size: Bound on |P|

    Returns:
        Realizable(word, ordering) with set(P(word)) == P, where ordering is
        the route order of the offsets, or NotRealizable with the reason.
    """
    targets = sorted(frozenset(tuple(q) for q in offsets))
    if len(targets) > max_size:
        raise RealizabilitySizeError(
            f"offset set of size {len(targets)} exceeds search bound {max_size}"
        )
    if not targets:
        return NotRealizable("empty offset list")
    starts = [q for q in targets if q in LETTER_OF_STEP]
    if not starts:
        return NotRealizable("no cardinal first offset")

    bit = {q: 1 << i for i, q in enumerate(targets)}
    full = (1 << len(targets)) - 1
    State = Tuple[Vec, Vec, int]
    parent: Dict[State, Optional[State]] = {}
    queue: deque = deque()
    for q in starts:
        state = (q, q, bit[q])
        parent[state] = None
        queue.append(state)

    while queue:
        state = queue.popleft()
        current, step, covered = state
        if covered == full:
            walk: List[Vec] = []
            node: Optional[State] = state
            while node is not None:
                walk.append(node[0])
                node = parent[node]
            walk.reverse()
            return Realizable(reconstruct_word(walk), tuple(walk))
        for q in targets:
            delta = _sub(q, current)
            if delta not in TWO_STEP_SUMS:
                continue
            next_step = _sub(delta, step)
            if next_step not in LETTER_OF_STEP:
                continue
            child = (q, next_step, covered | bit[q])
            if child not in parent:
                parent[child] = state
                queue.append(child)
    return NotRealizable("search exhausted")


def admissible_rectangle_bound(p: SupportPattern) -> Tuple[int, int]:
    """
    Smallest even (Lx, Ly) exceeding every |v_x|, |v_y| over D and D + D,
    where D = {+-(Q_j - Q_i)}. Conservative: tori below it may still work.
    """
    diffs = set()
    for qi, qj in combinations(p.offsets, 2):
        v = _sub(qj, qi)
        diffs.add(v)
        diffs.add((-v[0], -v[1]))
    values = diffs | {_add(u, v) for u in diffs for v in diffs}
    max_x = max((abs(v[0]) for v in values), default=0)
    max_y = max((abs(v[1]) for v in values), default=0)
    return (max_x // 2 + 1) * 2, (max_y // 2 + 1) * 2
