"""Multi-index enumeration in the canonical order shared by every module.

Canonical order: graded by the l1 norm ``|n|``, and within a shell
lexicographically *descending*, so the shell ``|n| = 1`` in two variables
reads ``(1, 0), (0, 1)``.
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

MultiIndex = tuple[int, ...]

INDEX_BUDGET_ENV = "BERGMAN_INDEX_BUDGET"
BOX_BUDGET_ENV = "BERGMAN_BOX_BUDGET"
DEFAULT_INDEX_BUDGET = 50_000_000
DEFAULT_BOX_BUDGET = 4096


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured resource budget."""


def index_budget() -> int:
    return int(os.environ.get(INDEX_BUDGET_ENV, DEFAULT_INDEX_BUDGET))


def box_budget() -> int:
    return int(os.environ.get(BOX_BUDGET_ENV, DEFAULT_BOX_BUDGET))


def check_budget(count: int, what: str, budget: int | None = None) -> None:
    budget = index_budget() if budget is None else budget
    if count > budget:
        raise BudgetError(f"{what}: {count} items exceeds budget {budget}")


def shell_size(m: int, N: int) -> int:
    """Number of ``n`` in ``N^m`` with ``|n| = N``."""
    if N < 0:
        return 0
    return comb(N + m - 1, m - 1)


def ball_size(m: int, N: int) -> int:
    """Number of ``n`` in ``N^m`` with ``|n| <= N``."""
    return comb(N + m, m)


@lru_cache(maxsize=32)
def _shell(m: int, N: int) -> np.ndarray:
    # Expand one coordinate at a time: every partial row with remainder r
    # branches into values r, r-1, ..., 0, which keeps lex-descending order.
    prefix = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([N], dtype=np.int64)
    for _ in range(m - 1):
        counts = rem + 1
        parent = np.repeat(np.arange(len(rem)), counts)
        starts = np.cumsum(counts) - counts
        value = rem[parent] - (np.arange(int(counts.sum())) - starts[parent])
        prefix = np.column_stack([prefix[parent], value])
        rem = rem[parent] - value
    out = np.column_stack([prefix, rem])
    out.setflags(write=False)
    return out


def shell_array(m: int, N: int) -> np.ndarray:
    """All ``n`` with ``|n| = N`` as an ``(count, m)`` int array, canonical order."""
    if m < 1:
        raise ValueError("dimension must be >= 1")
    if N < 0:
        return np.zeros((0, m), dtype=np.int64)
    check_budget(shell_size(m, N), f"shell |n|={N} in dimension {m}")
    return _shell(m, N)


def iter_shell_chunks(m: int, N: int) -> Iterator[np.ndarray]:
    """Yield the shell ``|n| = N`` in canonical order, split on the first coordinate.

    Keeps peak memory at one ``(m-1)``-dimensional shell.
    """
    check_budget(shell_size(m, N), f"shell |n|={N} in dimension {m}")
    if m == 1:
        yield np.array([[N]], dtype=np.int64)
        return
    for first in range(N, -1, -1):
        rest = _shell(m - 1, N - first)
        yield np.column_stack([np.full(len(rest), first, dtype=np.int64), rest])


def ball_array(m: int, N: int) -> np.ndarray:
    """All ``n`` with ``|n| <= N`` in canonical order."""
    check_budget(ball_size(m, N), f"indices |n|<={N} in dimension {m}")
    return (
        np.concatenate([_shell(m, k) for k in range(N + 1)]) if N >= 0 else np.zeros((0, m), dtype=np.int64)
    )


def ball_indices(m: int, N: int) -> list[MultiIndex]:
    return [tuple(int(v) for v in row) for row in ball_array(m, N)]


def cube_array(m: int, N: int) -> np.ndarray:
    """The grid ``{0..N}^m`` in canonical order."""
    check_budget((N + 1) ** m, f"grid {{0..{N}}}^{m}")
    axes = np.meshgrid(*([np.arange(N + 1)] * m), indexing="ij")
    grid = np.stack([a.ravel() for a in axes], axis=1).astype(np.int64)
    # lexsort keys: last key is primary
    keys = [-grid[:, j] for j in range(m - 1, -1, -1)] + [grid.sum(axis=1)]
    return grid[np.lexsort(keys)]


def canonical_key(n: MultiIndex) -> tuple:
    return (sum(n), tuple(-v for v in n))
