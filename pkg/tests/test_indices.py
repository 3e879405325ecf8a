import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergman_ellipsoids.indices import (
    BudgetError,
    ball_array,
    ball_size,
    canonical_key,
    check_budget,
    cube_array,
    iter_shell_chunks,
    shell_array,
    shell_size,
)


def brute_shell(m, N):
    pts = [n for n in itertools.product(range(N + 1), repeat=m) if sum(n) == N]
    return sorted(pts, key=canonical_key)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("N", [0, 1, 2, 5])
def test_shell_matches_itertools(m, N):
    got = [tuple(r) for r in shell_array(m, N)]
    assert got == brute_shell(m, N)
    assert len(got) == shell_size(m, N)
    chunks = np.concatenate(list(iter_shell_chunks(m, N)))
    np.testing.assert_array_equal(chunks, shell_array(m, N))


def test_ball_canonical_order():
    got = [tuple(r) for r in ball_array(2, 2)]
    assert got == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(ball_array(3, 4)) == ball_size(3, 4)


@given(st.integers(1, 4), st.integers(0, 5))
def test_cube_is_sorted_and_complete(m, N):
    grid = cube_array(m, N)
    assert len(grid) == (N + 1) ** m
    keys = [canonical_key(tuple(r)) for r in grid]
    assert keys == sorted(keys)
    assert len(set(map(tuple, grid))) == len(grid)


def test_shell_arrays_are_read_only():
    arr = shell_array(3, 4)
    with pytest.raises(ValueError):
        arr[0, 0] = 7


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("BERGMAN_INDEX_BUDGET", "10")
    with pytest.raises(BudgetError):
        ball_array(3, 5)
    check_budget(10, "exact fit")
