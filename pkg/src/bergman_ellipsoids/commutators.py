"""Self-commutators of the coordinate multipliers on the normalized monomial basis.

With ``w(n)`` the squared monomial norm, the multiplier ``M_v`` acts as a
weighted shift ``b_n -> sqrt(w(n + e_v) / w(n)) b_{n + e_v}``, so
``[M_v, M_v*]`` is diagonal with eigenvalue

    lambda(n) = w(n) / w(n - e_v) - w(n + e_v) / w(n)

(first term zero when ``n_v = 0``).  Everything is computed from
differences of log-norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .domain import DomainSpec, NormTable, _as_index, log_norm_array, log_norm_ratio
from .indices import MultiIndex, ball_array, check_budget, iter_shell_chunks, shell_size

__all__ = [
    "CommutatorEigenvalue",
    "DecayProfile",
    "TruncatedOperator",
    "self_commutator_eigenvalue",
    "eigenvalue_arrays",
    "decay_profile",
    "decay_profiles",
    "truncated_self_commutator_diagonal",
    "weighted_shift_matrix",
    "cross_commutator_matrix",
    "schatten_partial_sum",
]


@dataclass(frozen=True)
class CommutatorEigenvalue:
    n: MultiIndex
    var: int
    lambda_prime: float
    lambda_double_prime: float
    lambda_: float

    def __post_init__(self) -> None:
        if self.lambda_ != self.lambda_prime - self.lambda_double_prime:
            raise ValueError("lambda must equal lambda_prime - lambda_double_prime")


@dataclass
class DecayProfile:
    var: int
    shells: list[tuple[int, float]] = field(default_factory=list)

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.shells]


@dataclass
class TruncatedOperator:
    """A matrix on ``span{b_n : |n| <= N}`` with its basis and edge bookkeeping."""

    matrix: sp.csr_matrix
    basis: list[MultiIndex]
    dropped: int = 0


def _check_var(spec: DomainSpec, var: int) -> int:
    if not 0 <= var < spec.m:
        raise ValueError(f"variable index {var} out of range for dimension {spec.m}")
    return var


def self_commutator_eigenvalue(spec: DomainSpec, n: Sequence[int], var: int) -> CommutatorEigenvalue:
    n = _as_index(spec, n)
    _check_var(spec, var)
    lp = math.exp(log_norm_ratio(spec, n, var, -1)) if n[var] > 0 else 0.0
    lpp = math.exp(log_norm_ratio(spec, n, var, +1))
    return CommutatorEigenvalue(n, var, lp, lpp, lp - lpp)


def eigenvalue_arrays(
    spec: DomainSpec, n: np.ndarray, var: int, log_n: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised ``(lambda', lambda'', lambda)`` for each row of ``n``."""
    _check_var(spec, var)
    n = np.asarray(n, dtype=np.int64)
    if log_n is None:
        log_n = log_norm_array(spec, n)
    up = n.copy()
    up[:, var] += 1
    lpp = np.exp(log_norm_array(spec, up) - log_n)
    lp = np.zeros(len(n))
    has = n[:, var] > 0
    if has.any():
        down = n[has].copy()
        down[:, var] -= 1
        lp[has] = np.exp(log_n[has] - log_norm_array(spec, down))
    return lp, lpp, lp - lpp


def _validate_shells(shells: Iterable[int]) -> list[int]:
    shells = [int(s) for s in shells]
    if not shells:
        raise ValueError("shell list is empty")
    if any(s < 0 for s in shells):
        raise ValueError("shells must be nonnegative")
    if any(b <= a for a, b in zip(shells, shells[1:])):
        raise ValueError("shells must be strictly increasing")
    return shells


def decay_profiles(
    spec: DomainSpec, shells: Iterable[int], variables: Sequence[int] | None = None
) -> list[DecayProfile]:
    """``max |lambda(n)|`` over each l1 shell, for every requested variable.

    The log-norm at each shell point is computed once and shared across
    variables.
    """
    shells = _validate_shells(shells)
    variables = list(range(spec.m)) if variables is None else [_check_var(spec, v) for v in variables]
    check_budget(sum(shell_size(spec.m, N) for N in shells), "decay sweep")
    profiles = {v: DecayProfile(v) for v in variables}
    for N in shells:
        best = dict.fromkeys(variables, 0.0)
        for chunk in iter_shell_chunks(spec.m, N):
            log_n = log_norm_array(spec, chunk)
            for v in variables:
                lam = eigenvalue_arrays(spec, chunk, v, log_n)[2]
                best[v] = max(best[v], float(np.abs(lam).max()))
        for v in variables:
            profiles[v].shells.append((N, best[v]))
    return [profiles[v] for v in variables]


def decay_profile(spec: DomainSpec, var: int, shells: Iterable[int]) -> DecayProfile:
    return decay_profiles(spec, shells, [var])[0]


def truncated_self_commutator_diagonal(spec: DomainSpec, var: int, N: int) -> list[CommutatorEigenvalue]:
    """Eigenvalues of ``[M_var, M_var*]`` for every ``|n| <= N``, canonical order."""
    if N < 0:
        raise ValueError("N must be >= 0")
    _check_var(spec, var)
    idx = ball_array(spec.m, N)
    lp, lpp, _ = eigenvalue_arrays(spec, idx, var)
    return [
        CommutatorEigenvalue(tuple(int(x) for x in row), var, float(a), float(b), float(a) - float(b))
        for row, a, b in zip(idx, lp, lpp)
    ]


def weighted_shift_matrix(
    spec: DomainSpec, var: int, N: int, table: NormTable | None = None
) -> TruncatedOperator:
    """``P M_var P`` for ``P`` the projection onto ``|n| <= N``; shifts to ``|n| = N+1`` are dropped."""
    _check_var(spec, var)
    table = NormTable(spec, N) if table is None else table
    basis = [n for n, _ in table.rows()]
    pos = {n: i for i, n in enumerate(basis)}
    rows, cols, vals = [], [], []
    dropped = 0
    for n in basis:
        up = n[:var] + (n[var] + 1,) + n[var + 1 :]
        if up not in pos:
            dropped += 1
            continue
        rows.append(pos[up])
        cols.append(pos[n])
        vals.append(math.exp(0.5 * (table[up] - table[n])))
    size = len(basis)
    mat = sp.csr_matrix((vals, (rows, cols)), shape=(size, size))
    return TruncatedOperator(mat, basis, dropped)


def cross_commutator_matrix(spec: DomainSpec, var_a: int, var_b: int, N: int) -> TruncatedOperator:
    """Truncation of ``[M_a, M_b*]`` to ``span{b_n : |n| <= N}``.

    Entries are products of weighted-shift weights: ``M_a M_b*`` sends
    ``b_n`` through ``n - e_b``, and ``M_b* M_a`` through ``n + e_a``.  An
    intermediate index outside the truncation drops that term; the drop count
    is reported on the result.
    """
    _check_var(spec, var_a)
    _check_var(spec, var_b)
    if var_a == var_b:
        raise ValueError("cross commutator needs two distinct variables")
    if N < 0:
        raise ValueError("N must be >= 0")
    table = NormTable(spec, N)
    basis = [n for n, _ in table.rows()]
    pos = {n: i for i, n in enumerate(basis)}

    def shifted(n, v, d):
        return n[:v] + (n[v] + d,) + n[v + 1 :]

    entries: dict[tuple[int, int], float] = {}
    dropped = 0
    for n in basis:
        # M_a M_b*: b_n -> b_{n-e_b} -> b_{n-e_b+e_a}
        if n[var_b] > 0:
            mid = shifted(n, var_b, -1)
            out = shifted(mid, var_a, +1)
            weight = math.exp(0.5 * (table[n] - table[mid]) + 0.5 * (table[out] - table[mid]))
            key = (pos[out], pos[n])
            entries[key] = entries.get(key, 0.0) + weight
        # M_b* M_a: b_n -> b_{n+e_a} -> b_{n+e_a-e_b}
        mid = shifted(n, var_a, +1)
        if mid not in pos:
            dropped += 1
        elif mid[var_b] > 0:
            out = shifted(mid, var_b, -1)
            weight = math.exp(0.5 * (table[mid] - table[n]) + 0.5 * (table[mid] - table[out]))
            key = (pos[out], pos[n])
            entries[key] = entries.get(key, 0.0) - weight
    size = len(basis)
    if entries:
        (r, c), v = zip(*entries.keys()), list(entries.values())
        mat = sp.csr_matrix((v, (r, c)), shape=(size, size))
    else:
        mat = sp.csr_matrix((size, size))
    return TruncatedOperator(mat, basis, dropped)


def schatten_partial_sum(spec: DomainSpec, var: int, p: float, N: int) -> float:
    """``sum_{|n| <= N} |lambda(n)|**p`` for the diagonal self-commutator."""
    if not p > 0:
        raise ValueError("Schatten exponent p must be > 0")
    if N < 0:
        raise ValueError("N must be >= 0")
    _check_var(spec, var)
    total = 0.0
    for k in range(N + 1):
        for chunk in iter_shell_chunks(spec.m, k):
            lam = eigenvalue_arrays(spec, chunk, var)[2]
            total += float(np.sum(np.abs(lam) ** p))
    return total
