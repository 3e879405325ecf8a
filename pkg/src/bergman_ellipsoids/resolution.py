"""The box-cover complex ``A_0 -> A_1 -> ... -> A_k`` and its verification.

Level ``q >= 1`` of the complex is indexed by the ``q``-element subsets
``I`` of the ``k`` cover boxes (lexicographic order), each carrying the
intersection box ``B_I``.  Level 0 is the whole Bergman space, i.e. the
unbounded box indexed by the empty subset.  The map ``Psi_q`` sends the
``I_q`` component to every ``I_{q+1}`` obtained by adding one element,
with sign ``(-1)**(i-1)`` when the added element is the ``i``-th smallest
of ``I_{q+1}``, and zeroes coefficients outside ``B_{I_{q+1}}``.

All maps act coefficient by coefficient, so exactness is checked one
multi-index fiber at a time with exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .exact import integer_rank, matmul
from .ideals import Box, MonomialIdeal, box_contains, box_contains_array, box_intersect, ideal_contains_array
from .indices import MultiIndex, box_budget, check_budget, cube_array

__all__ = [
    "BoxComplex",
    "SignedIncidence",
    "ExactnessReport",
    "IndexCertificate",
    "build_complex",
    "fiber_dimensions",
    "fiber_membership",
    "fiber_psi",
    "psi_matrix",
    "check_chain_condition",
    "verify_exactness",
    "index_certificate",
]

Shuffle = tuple[int, ...]


@dataclass
class BoxComplex:
    m: int
    boxes: tuple[Box, ...]
    levels: list[list[tuple[Shuffle, Box]]]

    @property
    def k(self) -> int:
        return len(self.boxes)

    def level(self, q: int) -> list[tuple[Shuffle, Box]]:
        """Entries of ``A_q``; ``q = 0`` is the unbounded box over ``()``."""
        if q == 0:
            return [((), Box(self.m))]
        if not 1 <= q <= self.k:
            raise IndexError(f"level {q} out of range 0..{self.k}")
        return self.levels[q - 1]

    def level_sizes(self) -> list[int]:
        return [1] + [len(level) for level in self.levels]


def build_complex(boxes) -> BoxComplex:
    """Intersect every subset of ``boxes``; empty intersections are kept."""
    boxes = tuple(boxes)
    k = len(boxes)
    if k < 1:
        raise ValueError("complex needs at least one box")
    m = boxes[0].m
    if any(b.m != m for b in boxes):
        raise ValueError("boxes have different dimensions")
    check_budget(2**k - 1, f"complex with k={k} boxes", box_budget())
    levels: list[list[tuple[Shuffle, Box]]] = []
    previous: dict[Shuffle, Box] = {(): Box(m)}
    for q in range(1, k + 1):
        current: dict[Shuffle, Box] = {}
        for subset in itertools.combinations(range(k), q):
            # B_I = B_{I minus last} cap box_last
            current[subset] = box_intersect([previous[subset[:-1]], boxes[subset[-1]]])
        levels.append(list(current.items()))
        previous = current
    return BoxComplex(m, boxes, levels)


def fiber_dimensions(complex_: BoxComplex, n) -> tuple[int, ...]:
    """``(c_0, ..., c_k)`` with ``c_q`` the number of level-``q`` boxes containing ``n``."""
    n = tuple(int(v) for v in n)
    if len(n) != complex_.m:
        raise ValueError(f"multi-index has length {len(n)}, expected {complex_.m}")
    return (1,) + tuple(sum(box_contains(box, n) for _, box in level) for level in complex_.levels)


def fiber_membership(complex_: BoxComplex, n) -> list[list[Shuffle]]:
    """Per level, the shuffles whose box contains ``n`` (level 0 always ``[()]``)."""
    n = tuple(int(v) for v in n)
    return [[()]] + [[I for I, box in level if box_contains(box, n)] for level in complex_.levels]


def _faces(I: Shuffle):
    """``(sign, I minus its i-th smallest element)`` for i = 1..len(I)."""
    for i in range(len(I)):
        yield (1 if i % 2 == 0 else -1), I[:i] + I[i + 1 :]


def fiber_psi(rows: list[Shuffle], cols: list[Shuffle]) -> list[list[int]]:
    """Fiber of ``Psi_q`` from the level-``q`` shuffles ``cols`` to level-``q+1`` ``rows``."""
    pos = {I: j for j, I in enumerate(cols)}
    out = [[0] * len(cols) for _ in rows]
    for r, I in enumerate(rows):
        for sign, face in _faces(I):
            c = pos.get(face)
            if c is not None:
                out[r][c] += sign
    return out


@dataclass
class SignedIncidence:
    """``Psi_q`` on the grid ``{0..N}^m`` as a sparse integer matrix."""

    q: int
    matrix: sp.csr_matrix
    rows: list[tuple[Shuffle, MultiIndex]]
    cols: list[tuple[Shuffle, MultiIndex]]


def _level_basis(complex_: BoxComplex, q: int, grid: np.ndarray) -> list[tuple[Shuffle, MultiIndex]]:
    basis = []
    for I, box in complex_.level(q):
        for row in grid[box_contains_array(box, grid)]:
            basis.append((I, tuple(int(v) for v in row)))
    return basis


def psi_matrix(complex_: BoxComplex, q: int, N: int) -> SignedIncidence:
    """Global ``Psi_q : A_q -> A_{q+1}`` restricted to exponents in ``{0..N}^m``.

    Basis vectors are ``(I, n)`` with ``n`` in ``B_I``, ordered by shuffle
    then canonical multi-index order.
    """
    if not 0 <= q <= complex_.k - 1:
        raise IndexError(f"Psi_q defined for 0 <= q <= {complex_.k - 1}, got {q}")
    grid = cube_array(complex_.m, N)
    cols = _level_basis(complex_, q, grid)
    rows = _level_basis(complex_, q + 1, grid)
    check_budget(len(rows) + len(cols), f"Psi_{q} basis on grid N={N}")
    pos = {key: j for j, key in enumerate(cols)}
    r_idx, c_idx, vals = [], [], []
    for r, (I, n) in enumerate(rows):
        for sign, face in _faces(I):
            c = pos.get((face, n))
            if c is not None:
                r_idx.append(r)
                c_idx.append(c)
                vals.append(sign)
    mat = sp.csr_matrix(
        (np.array(vals, dtype=np.int64), (r_idx, c_idx)), shape=(len(rows), len(cols)), dtype=np.int64
    )
    return SignedIncidence(q, mat, rows, cols)


def check_chain_condition(complex_: BoxComplex, N: int) -> bool:
    """``Psi_{q+1} Psi_q == 0`` exactly, for the global matrices on ``{0..N}^m``."""
    mats = [psi_matrix(complex_, q, N).matrix for q in range(complex_.k)]
    for lower, upper in zip(mats, mats[1:]):
        prod = (upper @ lower).tocsr()
        prod.eliminate_zeros()
        if prod.nnz:
            return False
    return True


@dataclass
class ExactnessReport:
    N: int
    k: int
    fibers_checked: int = 0
    fibers_in_ideal: int = 0
    fibers_in_complement: int = 0
    distinct_fibers: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "passed": self.passed,
            "fibers_checked": self.fibers_checked,
            "fibers_in_ideal": self.fibers_in_ideal,
            "fibers_in_complement": self.fibers_in_complement,
            "distinct_fibers": self.distinct_fibers,
            "failures": self.failures,
        }


def _fiber_analysis(members: list[list[Shuffle]]) -> dict:
    """Level dimensions and map ranks of one fiber, plus its chain check."""
    k = len(members) - 1
    dims = [len(level) for level in members]
    mats = [fiber_psi(members[q + 1], members[q]) for q in range(k)]
    ranks = [integer_rank(mat) if mat and mat[0] else 0 for mat in mats] + [0]
    chain_ok = all(not any(any(row) for row in matmul(mats[q + 1], mats[q])) for q in range(k - 1))
    return {"dims": dims, "ranks": ranks, "chain_ok": chain_ok}


def verify_exactness(complex_: BoxComplex, ideal: MonomialIdeal, N: int) -> ExactnessReport:
    """Check ``0 -> closure(I) -> A_0 -> ... -> A_k -> 0`` fiber by fiber on ``{0..N}^m``.

    For ``n`` in the ideal every ``c_q(n)``, ``q >= 1``, must vanish.  For
    ``n`` outside it, ``Psi_0`` must be injective on the fiber,
    ``rank Psi_q + rank Psi_{q+1} = c_{q+1}`` at every level, consecutive
    maps must compose to zero, and ``sum_{q>=1} (-1)**(q-1) c_q = 1``.
    Fibers with the same box membership pattern share one rank computation.
    """
    if complex_.m != ideal.m:
        raise ValueError("complex and ideal have different dimensions")
    grid = cube_array(complex_.m, N)
    in_ideal = ideal_contains_array(ideal, grid)
    entries = [(q, I, box) for q in range(1, complex_.k + 1) for I, box in complex_.level(q)]
    membership = np.zeros((len(grid), len(entries)), dtype=bool)
    for col, (_, _, box) in enumerate(entries):
        membership[:, col] = box_contains_array(box, grid)
    packed = np.ascontiguousarray(np.packbits(membership, axis=1))
    keys = packed.view(np.dtype((np.void, packed.shape[1]))).ravel()
    _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).ravel()
    patterns = membership[first]

    analyses = []
    for pattern in patterns:
        members: list[list[Shuffle]] = [[()]] + [[] for _ in range(complex_.k)]
        for col in np.flatnonzero(pattern):
            q, I, _ = entries[col]
            members[q].append(I)
        analyses.append(_fiber_analysis(members))

    report = ExactnessReport(N=N, k=complex_.k, distinct_fibers=len(patterns))
    report.fibers_checked = len(grid)
    report.fibers_in_ideal = int(in_ideal.sum())
    report.fibers_in_complement = len(grid) - report.fibers_in_ideal
    ideal_problems = [_ideal_fiber_problems(info) for info in analyses]
    complement_problems = [_complement_fiber_problems(info) for info in analyses]
    bad_ideal = np.array([bool(p) for p in ideal_problems])
    bad_complement = np.array([bool(p) for p in complement_problems])
    failing = np.where(in_ideal, bad_ideal[inverse], bad_complement[inverse])
    for idx in np.flatnonzero(failing):
        problems = ideal_problems if in_ideal[idx] else complement_problems
        n = [int(v) for v in grid[idx]]
        for problem in problems[inverse[idx]]:
            report.failures.append({"n": n, **problem})
    return report


def _ideal_fiber_problems(info: dict) -> list[dict]:
    dims = info["dims"]
    if any(dims[1:]):
        return [{"level": 1, "kind": "ideal_fiber_nonzero", "dims": dims}]
    return []


def _complement_fiber_problems(info: dict) -> list[dict]:
    dims, ranks = info["dims"], info["ranks"]
    k = len(dims) - 1
    problems = []
    if not info["chain_ok"]:
        problems.append({"level": None, "kind": "chain", "dims": dims})
    if ranks[0] != dims[0]:
        problems.append({"level": 0, "kind": "psi0_not_injective", "ranks": ranks, "dims": dims})
    for q in range(k):
        if ranks[q] + ranks[q + 1] != dims[q + 1]:
            problems.append({"level": q + 1, "kind": "rank", "ranks": ranks, "dims": dims})
    euler = sum((-1) ** (q - 1) * dims[q] for q in range(1, k + 1))
    if euler != 1:
        problems.append({"level": None, "kind": "inclusion_exclusion", "dims": dims})
    return problems


@dataclass
class IndexCertificate:
    """The formal sum ``sum_q (-1)**(q-1) [alpha_q]`` expanded over the summands of each ``A_q``."""

    k: int
    entries: list[tuple[int, int, Shuffle, Box]]

    def to_list(self) -> list[dict]:
        return [
            {
                "sign": sign,
                "q": q,
                "shuffle": list(I),
                "bounds": {str(j): b for j, b in box.bounds},
                "empty": box.empty,
            }
            for sign, q, I, box in self.entries
        ]

    def level_counts(self) -> list[int]:
        return [sum(1 for _, q, _, _ in self.entries if q == level) for level in range(1, self.k + 1)]


def index_certificate(complex_: BoxComplex) -> IndexCertificate:
    entries = [((-1) ** (q - 1), q, I, box) for q in range(1, complex_.k + 1) for I, box in complex_.level(q)]
    return IndexCertificate(complex_.k, entries)
