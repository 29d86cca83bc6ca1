"""
Code Parameters Tool

Exact n and k from ranks, plus the small-weight distance screen: supports
are enumerated by increasing weight, the first support element is pinned
to one representative per orbit of the layout's translation symmetries,
and the last element is closed by a syndrome lookup.
"""

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from operator import xor
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.errors import NonCommutingError, RankMismatchError
from src.tools.gf2linalg import BitMatrix, RowSpace, left_kernel_dim, rank, right_kernel_basis
from src.tools.layouts import data_orbit_representatives
from src.tools.torus import CodeInstance, verify_commutation


@dataclass(frozen=True)
class Exact:
    value: int
    witness: Tuple[int, ...] = ()

    def __str__(self) -> str:
        return str(self.value)

    def sort_key(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class GreaterThan:
    cutoff: int

    def __str__(self) -> str:
        return f">{self.cutoff}"

    def sort_key(self) -> float:
        return self.cutoff + 0.5


@dataclass(frozen=True)
class NotDefined:
    def __str__(self) -> str:
        return "-"

    def sort_key(self) -> float:
        return -1.0


DistanceResult = Union[Exact, GreaterThan, NotDefined]


@dataclass(frozen=True)
class CodeParameters:
    """
    Attributes:
        n: number of data qubits
        k: n - rank(H_X) - rank(H_Z)
        k_dependencies: dim ker(H_X^T) + dim ker(H_Z^T), always equal to k
        d_x: screen result for X-type logicals (in ker H_Z, outside row(H_X))
        d_z: screen result for Z-type logicals
        w_max: cutoff used by the screen
    """

    n: int
    k: int
    k_dependencies: int
    d_x: DistanceResult
    d_z: DistanceResult
    w_max: int

    @property
    def distance(self) -> DistanceResult:
        return min(self.d_x, self.d_z, key=lambda d: d.sort_key())

    def as_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "k": self.k,
            "k_dependencies": self.k_dependencies,
            "dX": str(self.d_x),
            "dZ": str(self.d_z),
            "d": str(self.distance),
            "w_max": self.w_max,
        }


def distance_screen(
    opposite: BitMatrix,
    stabilizers: BitMatrix,
    w_max: int,
    representatives: Optional[Sequence[int]] = None,
) -> DistanceResult:
    """
    Minimum weight of x with opposite.x = 0 and x outside row(stabilizers), up to w_max.

    `representatives` must meet every orbit of a symmetry group that
    preserves both matrices; None means every column.
    """
    n = opposite.cols
    syndromes = opposite.column_ints() if opposite.rows else [0] * n
    span = RowSpace.of(stabilizers)
    by_syndrome: Dict[int, List[int]] = {}
    for i, s in enumerate(syndromes):
        by_syndrome.setdefault(s, []).append(i)
    reps = list(range(n)) if representatives is None else sorted(set(representatives))

    for weight in range(1, w_max + 1):
        for r in reps:
            if weight == 1:
                if syndromes[r] == 0 and (1 << r) not in span:
                    return Exact(1, (r,))
                continue
            for prefix in combinations(range(n), weight - 2):
                if r in prefix:
                    continue
                target = reduce(xor, (syndromes[i] for i in prefix), syndromes[r])
                floor = prefix[-1] if prefix else -1
                for last in by_syndrome.get(target, ()):
                    if last <= floor or last == r:
                        continue
                    support = (r,) + prefix + (last,)
                    if sum(1 << i for i in support) not in span:
                        return Exact(weight, tuple(sorted(support)))
    return GreaterThan(w_max)


def code_parameters(c: CodeInstance, w_max: int) -> CodeParameters:
    """
    Exact n and k plus the distance screen up to w_max.

    Args:
        c: Built code instance
        w_max: Largest logical weight the screen searches

    Returns:
        CodeParameters; distances are NotDefined when k = 0

    Raises:
        NonCommutingError: H_X H_Z^T is nonzero
        RankMismatchError: the two counts of k disagree
    """
    if not verify_commutation(c):
        raise NonCommutingError(
            f"{c.word} with layout {c.layout.descriptor} on {c.torus} has anticommuting checks"
        )
    k = c.n - rank(c.hx) - rank(c.hz)
    k_dependencies = left_kernel_dim(c.hx) + left_kernel_dim(c.hz)
    # n equals the number of checks on the checkerboard, so both counts agree
    if k != k_dependencies:
        raise RankMismatchError(
            f"{c.word} on {c.torus}: k = {k} from ranks but {k_dependencies} from check dependencies"
        )
    if k == 0:
        return CodeParameters(c.n, k, k_dependencies, NotDefined(), NotDefined(), w_max)

    reps = data_orbit_representatives(c.layout)
    d_x = distance_screen(c.hz, c.hx, w_max, reps)
    d_z = distance_screen(c.hx, c.hz, w_max, reps)
    return CodeParameters(c.n, k, k_dependencies, d_x, d_z, w_max)


def _min_logical_weight(opposite: BitMatrix, stabilizers: BitMatrix) -> Optional[int]:
    basis = [sum(int(b) << i for i, b in enumerate(v)) for v in right_kernel_basis(opposite)]
    span = RowSpace.of(stabilizers)
    best = None
    for coefficients in product((0, 1), repeat=len(basis)):
        x = reduce(xor, (v for v, take in zip(basis, coefficients) if take), 0)
        if x and x not in span:
            weight = bin(x).count("1")
            best = weight if best is None else min(best, weight)
    return best


def brute_force_distance(c: CodeInstance) -> Tuple[Optional[int], Optional[int]]:
    """(d_X, d_Z) by enumerating the full kernels; None when k = 0. Small n only."""
    return _min_logical_weight(c.hz, c.hx), _min_logical_weight(c.hx, c.hz)
