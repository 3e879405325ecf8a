"""Shift operators on box modules and on the quotient by a monomial ideal.

Both modules are spanned by normalized monomials ``b_n`` for ``n`` in a
down-closed set (a box, or the staircase complement ``C(I)``), and the
coordinate multiplier compresses to the weighted shift
``b_n -> sqrt(w(n + e) / w(n)) b_{n + e}`` when ``n + e`` stays in the set,
and to zero otherwise.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .commutators import DecayProfile, _check_var, _validate_shells
from .domain import DomainSpec, _as_index, log_norm_array, log_norm_ratio
from .ideals import Box, MonomialIdeal, box_contains, box_contains_array, ideal_contains, ideal_contains_array
from .indices import MultiIndex, iter_shell_chunks

__all__ = [
    "box_module_shift",
    "box_ratio_decay",
    "quotient_shift",
    "quotient_self_commutator_entry",
    "quotient_self_commutator_diagnostic",
]


def _up(n: MultiIndex, var: int) -> MultiIndex:
    return n[:var] + (n[var] + 1,) + n[var + 1 :]


def box_module_shift(
    box: Box, spec: DomainSpec, var: int, n: Sequence[int]
) -> tuple[MultiIndex, float] | None:
    """Action of the ``var`` coordinate on ``b_n`` in the box module, or None if it leaves the box."""
    n = _as_index(spec, n)
    _check_var(spec, var)
    if box.m != spec.m:
        raise ValueError("box and domain have different dimensions")
    if not box_contains(box, n):
        raise ValueError(f"{n} is not in the box")
    up = _up(n, var)
    if not box_contains(box, up):
        return None
    return up, math.exp(0.5 * log_norm_ratio(spec, n, var, +1))


def box_ratio_decay(box: Box, spec: DomainSpec, bounded_var: int, shells: Iterable[int]) -> DecayProfile:
    """Max of ``w(n + e) / w(n)`` over box points with ``n_var`` pinned at its bound.

    Shell ``N`` collects the points with ``|n| = N``; a shell with no such
    point reports 0.
    """
    shells = _validate_shells(shells)
    bounds = box.bound_map
    if bounded_var not in bounds:
        raise ValueError(f"coordinate {bounded_var} is not bounded in the box")
    if box.empty:
        raise ValueError("box is empty")
    b = bounds[bounded_var]
    others = [j for j in range(spec.m) if j != bounded_var]
    profile = DecayProfile(bounded_var)
    for N in shells:
        best = 0.0
        if N >= b:
            if not others:
                chunks = [np.array([[b]], dtype=np.int64)] if N == b else []
            else:
                chunks = iter_shell_chunks(len(others), N - b)
            for rest in chunks:
                if not others:
                    pts = rest
                else:
                    pts = np.empty((len(rest), spec.m), dtype=np.int64)
                    pts[:, others] = rest
                    pts[:, bounded_var] = b
                pts = pts[box_contains_array(box, pts)]
                if len(pts) == 0:
                    continue
                up = pts.copy()
                up[:, bounded_var] += 1
                ratio = np.exp(log_norm_array(spec, up) - log_norm_array(spec, pts))
                best = max(best, float(ratio.max()))
        profile.shells.append((N, best))
    return profile


def quotient_shift(
    ideal: MonomialIdeal, spec: DomainSpec, var: int, n: Sequence[int]
) -> tuple[MultiIndex, float] | None:
    """Compressed multiplier ``P_{I-perp} M_var`` on ``b_n`` for ``n`` outside the ideal."""
    n = _as_index(spec, n)
    _check_var(spec, var)
    if ideal.m != spec.m:
        raise ValueError("ideal and domain have different dimensions")
    if ideal_contains(ideal, n):
        raise ValueError(f"{n} lies in the ideal")
    up = _up(n, var)
    if ideal_contains(ideal, up):
        return None
    return up, math.exp(0.5 * log_norm_ratio(spec, n, var, +1))


def _entries(ideal: MonomialIdeal, spec: DomainSpec, var: int, pts: np.ndarray) -> np.ndarray:
    """Diagonal of ``[T_var, T_var*]`` at points of ``C(I)``."""
    log_n = log_norm_array(spec, pts)
    up = pts.copy()
    up[:, var] += 1
    keep_up = ~ideal_contains_array(ideal, up)
    out = np.zeros(len(pts))
    if keep_up.any():
        out[keep_up] -= np.exp(log_norm_array(spec, up[keep_up]) - log_n[keep_up])
    has_down = pts[:, var] > 0
    if has_down.any():
        # C(I) is down-closed, so n - e is in it whenever n_var > 0
        down = pts[has_down].copy()
        down[:, var] -= 1
        out[has_down] += np.exp(log_n[has_down] - log_norm_array(spec, down))
    return out


def quotient_self_commutator_entry(
    ideal: MonomialIdeal, spec: DomainSpec, var: int, n: Sequence[int]
) -> float:
    n = _as_index(spec, n)
    _check_var(spec, var)
    if ideal_contains(ideal, n):
        raise ValueError(f"{n} lies in the ideal")
    return float(_entries(ideal, spec, var, np.array([n], dtype=np.int64))[0])


def quotient_self_commutator_diagnostic(
    ideal: MonomialIdeal, spec: DomainSpec, var: int, shells: Iterable[int]
) -> DecayProfile:
    """Max ``|[T_var, T_var*] b_n|`` over ``n`` in ``C(I)`` with ``|n| = N``, per shell.

    Compressions of monomial shifts map the monomial basis to multiples of
    itself, so the self-commutator is diagonal and these entries are its
    eigenvalues.  Shells disjoint from ``C(I)`` report 0.
    """
    shells = _validate_shells(shells)
    _check_var(spec, var)
    if ideal.m != spec.m:
        raise ValueError("ideal and domain have different dimensions")
    profile = DecayProfile(var)
    for N in shells:
        best = 0.0
        for chunk in iter_shell_chunks(spec.m, N):
            pts = chunk[~ideal_contains_array(ideal, chunk)]
            if len(pts):
                best = max(best, float(np.abs(_entries(ideal, spec, var, pts)).max()))
        profile.shells.append((N, best))
    return profile
