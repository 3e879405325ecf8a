"""Monomial ideals with their staircase complements, covered by boxes.

Coordinates and box indices are 0-based throughout.  A box is the set of
exponent vectors bounded above on a subset of coordinates,
``{n : n_j <= b_j for j in support}``, and unbounded elsewhere.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .domain import ConfigError
from .indices import MultiIndex, box_budget, check_budget, cube_array

__all__ = [
    "MonomialIdeal",
    "Box",
    "parse_ideal",
    "load_ideal",
    "ideal_contains",
    "ideal_contains_array",
    "staircase_complement",
    "box_from_tuple",
    "box_cover",
    "box_contains",
    "box_contains_array",
    "box_intersect",
    "box_subset",
    "minimize_boxes",
    "BoxSpec",
]


@dataclass(frozen=True)
class MonomialIdeal:
    m: int
    generators: tuple[MultiIndex, ...] = ()

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("ideal dimension must be >= 1")
        gens = tuple(tuple(int(v) for v in g) for g in self.generators)
        for g in gens:
            if len(g) != self.m:
                raise ValueError(f"generator {g} does not have length {self.m}")
            if any(v < 0 for v in g):
                raise ValueError(f"generator {g} has a negative exponent")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        object.__setattr__(self, "generators", gens)

    @property
    def l(self) -> int:
        return len(self.generators)

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def to_dict(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}


def parse_ideal(config: Mapping[str, Any] | str, m: int | None = None) -> MonomialIdeal:
    """Read ``{"generators": [[int, ...], ...]}``; an empty list needs ``m``."""
    if isinstance(config, str):
        try:
            config = json.loads(config)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"<root>: invalid JSON ({exc})") from None
    if not isinstance(config, Mapping) or "generators" not in config:
        raise ConfigError("generators: missing")
    gens = config["generators"]
    if not isinstance(gens, list):
        raise ConfigError("generators: expected a list of exponent lists")
    out = []
    for i, g in enumerate(gens):
        if not isinstance(g, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in g):
            raise ConfigError(f"generators[{i}]: expected a list of integers")
        if any(v < 0 for v in g):
            raise ConfigError(f"generators[{i}]: exponents must be >= 0")
        out.append(tuple(g))
    dims = {len(g) for g in out}
    if len(dims) > 1:
        raise ConfigError("generators: all generators must have the same length")
    if dims:
        dim = dims.pop()
        if m is not None and dim != m:
            raise ConfigError(f"generators: ideal dimension {dim} does not match domain dimension {m}")
    elif m is None:
        raise ConfigError("generators: empty ideal needs a dimension")
    else:
        dim = m
    if dim < 1:
        raise ConfigError("generators: exponent vectors must be nonempty")
    if len(set(out)) != len(out):
        raise ConfigError("generators: generators must be pairwise distinct")
    return MonomialIdeal(dim, tuple(out))


def load_ideal(path: str | Path, m: int | None = None) -> MonomialIdeal:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"<file>: cannot read ideal config {path}: {exc}") from None
    return parse_ideal(text, m)


def _check_dim(m: int, n: Sequence[int]) -> MultiIndex:
    n = tuple(int(v) for v in n)
    if len(n) != m:
        raise ValueError(f"multi-index has length {len(n)}, expected {m}")
    return n


def ideal_contains(ideal: MonomialIdeal, n: Sequence[int]) -> bool:
    """Divisibility: some generator is coordinatewise <= ``n``."""
    n = _check_dim(ideal.m, n)
    return any(all(a <= b for a, b in zip(g, n)) for g in ideal.generators)


def ideal_contains_array(ideal: MonomialIdeal, n: np.ndarray) -> np.ndarray:
    n = np.asarray(n)
    out = np.zeros(len(n), dtype=bool)
    for g in ideal.generators:
        out |= np.all(n >= np.array(g), axis=1)
    return out


def staircase_complement(ideal: MonomialIdeal, N: int) -> list[MultiIndex]:
    """Exponents in ``{0..N}^m`` outside the ideal, in canonical order."""
    if N < 0:
        raise ValueError("N must be >= 0")
    grid = cube_array(ideal.m, N)
    keep = grid[~ideal_contains_array(ideal, grid)]
    return [tuple(int(v) for v in row) for row in keep]


@dataclass(frozen=True)
class Box:
    """``{n in N^m : n_j <= b_j for (j, b_j) in bounds}``; ``empty`` marks the empty set."""

    m: int
    bounds: tuple[tuple[int, int], ...] = ()
    empty: bool = False

    def __post_init__(self) -> None:
        bounds = tuple(sorted((int(j), int(b)) for j, b in dict(self.bounds).items()))
        if len(bounds) != len(self.bounds):
            raise ValueError("duplicate coordinate in box bounds")
        for j, b in bounds:
            if not 0 <= j < self.m:
                raise ValueError(f"coordinate {j} out of range for dimension {self.m}")
            if b < 0 and not self.empty:
                raise ValueError("negative bound on a nonempty box")
        object.__setattr__(self, "bounds", bounds)

    @property
    def shuffle(self) -> tuple[int, ...]:
        return tuple(j for j, _ in self.bounds)

    @property
    def bound_map(self) -> dict[int, int]:
        return dict(self.bounds)

    def bound_vector(self) -> np.ndarray:
        """Upper bounds per coordinate, ``-1`` meaning unbounded."""
        vec = np.full(self.m, -1, dtype=np.int64)
        for j, b in self.bounds:
            vec[j] = b
        return vec

    def to_dict(self) -> dict:
        return {"bounds": {str(j): b for j, b in self.bounds}, "empty": self.empty}


def box_contains(box: Box, n: Sequence[int]) -> bool:
    n = _check_dim(box.m, n)
    if box.empty:
        return False
    return all(n[j] <= b for j, b in box.bounds)


def box_contains_array(box: Box, n: np.ndarray) -> np.ndarray:
    n = np.asarray(n)
    if box.empty:
        return np.zeros(len(n), dtype=bool)
    out = np.ones(len(n), dtype=bool)
    for j, b in box.bounds:
        out &= n[:, j] <= b
    return out


def box_intersect(boxes: Sequence[Box]) -> Box:
    """Coordinatewise minimum of the bounds; empty if any input is empty."""
    boxes = list(boxes)
    if not boxes:
        raise ValueError("box_intersect needs at least one box")
    m = boxes[0].m
    if any(b.m != m for b in boxes):
        raise ValueError("boxes have different dimensions")
    merged: dict[int, int] = {}
    for box in boxes:
        for j, b in box.bounds:
            merged[j] = min(b, merged.get(j, b))
    return Box(m, tuple(merged.items()), any(b.empty for b in boxes))


def box_subset(inner: Box, outer: Box) -> bool:
    """Whether ``inner`` is contained in ``outer`` as subsets of ``N^m``."""
    if inner.empty:
        return True
    if outer.empty:
        return False
    bounds = inner.bound_map
    return all(j in bounds and bounds[j] <= b for j, b in outer.bounds)


def box_from_tuple(generators: Sequence[Sequence[int]], s: Sequence[int]) -> Box:
    """Box selected by choosing coordinate ``s[i]`` for generator ``i``.

    The bound on coordinate ``j`` is ``min(alpha_i[j] - 1)`` over the ``i``
    with ``s[i] == j``; a generator with a zero exponent at its chosen
    coordinate makes the box empty.
    """
    gens = [tuple(g) for g in generators]
    if len(s) != len(gens):
        raise ValueError(f"tuple has length {len(s)}, expected {len(gens)}")
    if not gens:
        raise ValueError("need at least one generator")
    m = len(gens[0])
    bounds: dict[int, int] = {}
    for g, j in zip(gens, s):
        if not 0 <= j < m:
            raise ValueError(f"coordinate {j} out of range for dimension {m}")
        b = g[j] - 1
        bounds[j] = min(b, bounds.get(j, b))
    empty = any(b < 0 for b in bounds.values())
    return Box(m, tuple(bounds.items()), empty)


def minimize_boxes(boxes: Iterable[Box]) -> list[Box]:
    """Remove boxes contained in another box of the list (ties keep the first)."""
    boxes = list(dict.fromkeys(boxes))
    kept = []
    for i, box in enumerate(boxes):
        if not any(j != i and box_subset(box, other) for j, other in enumerate(boxes)):
            kept.append(box)
    return kept


def box_cover(ideal: MonomialIdeal, minimize: bool = True) -> list[Box]:
    """Boxes whose union is the staircase complement of ``ideal``.

    Enumerates all ``m**l`` choice tuples, drops empty boxes and duplicates
    and, unless ``minimize`` is false, boxes contained in another one.
    Output is sorted by bounds so it does not depend on enumeration order.
    """
    if ideal.l < 1:
        raise ValueError("box cover needs at least one generator")
    count = ideal.m**ideal.l
    check_budget(count, f"box cover enumeration ({ideal.m}^{ideal.l} tuples)", box_budget())
    seen: dict[Box, None] = {}
    for s in itertools.product(range(ideal.m), repeat=ideal.l):
        box = box_from_tuple(ideal.generators, s)
        if not box.empty:
            seen.setdefault(box)
    boxes = list(seen)
    if minimize:
        boxes = minimize_boxes(boxes)
    return sorted(boxes, key=lambda b: b.bounds)


BoxSpec = Box
