import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman_ellipsoids.commutators import decay_profile, eigenvalue_arrays, self_commutator_eigenvalue
from bergman_ellipsoids.domain import log_norm
from bergman_ellipsoids.ideals import Box, MonomialIdeal
from bergman_ellipsoids.quotient import (
    box_module_shift,
    box_ratio_decay,
    quotient_self_commutator_diagnostic,
    quotient_self_commutator_entry,
    quotient_shift,
)

from conftest import BALL2, BALL3, MIXED

Z1Z2 = MonomialIdeal(2, ((1, 1),))


def test_quotient_shift_examples():
    assert quotient_shift(Z1Z2, BALL2, 0, (0, 1)) is None
    up, weight = quotient_shift(Z1Z2, BALL2, 0, (1, 0))
    assert up == (2, 0)
    assert weight == pytest.approx(math.sqrt(2 / 4), abs=1e-14)
    with pytest.raises(ValueError):
        quotient_shift(Z1Z2, BALL2, 0, (1, 1))


def hand_entry(n, var):
    """Diagonal of the compressed self-commutator for (z1 z2) on the ball, by hand."""
    t = sum(n)
    other = 1 - var
    lam_prime = n[var] / (t + 2)
    # z_var z^n stays outside the ideal only when the other exponent is 0
    lam_double = (n[var] + 1) / (t + 3) if n[other] == 0 else 0.0
    return lam_prime - lam_double


@pytest.mark.parametrize("var", [0, 1])
def test_quotient_entries_by_hand(var):
    for a in range(12):
        for n in [(a, 0), (0, a)]:
            assert quotient_self_commutator_entry(Z1Z2, BALL2, var, n) == pytest.approx(hand_entry(n, var), abs=1e-12)


def test_quotient_boundary_pattern():
    # on the axis n_1 = 0 the z1 entry is nonzero only at the origin
    entries = [quotient_self_commutator_entry(Z1Z2, BALL2, 0, (0, b)) for b in range(10)]
    assert entries[0] == pytest.approx(-1 / 3, abs=1e-12)
    assert all(e == 0.0 for e in entries[1:])


def test_zero_ideal_reduces_to_full_commutator():
    zero = MonomialIdeal(3, ())
    for n in [(0, 0, 0), (2, 1, 3), (4, 0, 1)]:
        for var in range(3):
            entry = quotient_self_commutator_entry(zero, MIXED, var, n)
            assert entry == eigenvalue_arrays(MIXED, np.array([n]), var)[2][0]
            assert entry == pytest.approx(self_commutator_eigenvalue(MIXED, n, var).lambda_, abs=1e-13)
    prof = quotient_self_commutator_diagnostic(MonomialIdeal(2, ()), BALL2, 0, [3, 8])
    assert prof.shells == decay_profile(BALL2, 0, [3, 8]).shells


def test_diagnostic_profile_ball():
    prof = quotient_self_commutator_diagnostic(Z1Z2, BALL2, 0, [50, 100, 200, 400])
    expected = [2 / ((N + 2) * (N + 3)) for N in (50, 100, 200, 400)]
    np.testing.assert_allclose(prof.values, expected, rtol=0, atol=1e-12)


def test_diagnostic_empty_shell_reports_zero():
    ideal = MonomialIdeal(2, ((1, 0), (0, 1)))
    prof = quotient_self_commutator_diagnostic(ideal, BALL2, 0, [0, 1, 5])
    assert prof.values[1:] == [0.0, 0.0]


def test_box_module_shift():
    box = Box(2, ((0, 2),))
    up, w = box_module_shift(box, BALL2, 0, (1, 4))
    assert up == (2, 4)
    assert w == pytest.approx(math.exp(0.5 * (log_norm(BALL2, (2, 4)) - log_norm(BALL2, (1, 4)))))
    assert box_module_shift(box, BALL2, 0, (2, 4)) is None
    assert box_module_shift(box, BALL2, 1, (2, 4))[0] == (2, 5)
    with pytest.raises(ValueError):
        box_module_shift(box, BALL2, 0, (3, 0))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.integers(1, 4), st.tuples(*[st.integers(0, 6)] * 3), st.integers(0, 2))
def test_quotient_agrees_with_box_for_pure_power(j, power, n, var):
    # C(z_j^power) is the single box {n_j <= power - 1}
    gen = [0, 0, 0]
    gen[j] = power
    ideal = MonomialIdeal(3, (tuple(gen),))
    box = Box(3, ((j, power - 1),))
    if n[j] >= power:
        return
    assert quotient_shift(ideal, BALL3, var, n) == box_module_shift(box, BALL3, var, n)


def test_box_ratio_decay_ball():
    # ratio w(n+e_0)/w(n) = (b+1)/(N+3) at n_0 = b on the ball, max over the shell is at n_0 = b
    box = Box(2, ((0, 2),))
    prof = box_ratio_decay(box, BALL2, 0, [1, 2, 10, 100])
    assert prof.values[0] == 0.0
    for N, v in prof.shells[1:]:
        assert v == pytest.approx(3 / (N + 3), rel=1e-12)
    with pytest.raises(ValueError):
        box_ratio_decay(box, BALL2, 1, [5])
