import json
import math

import pytest

from bergman_ellipsoids import DomainSpec

BALL2 = DomainSpec((1.0,), ((1.0,),))
BALL3 = DomainSpec((1.0,), ((1.0, 1.0),))
MIXED = DomainSpec((2.0,), ((1.0,), (3.0,)))
TWO_Z = DomainSpec((1.0, 1.0), ((1.0,),))
HAND = DomainSpec((1.0,), ((1.0,), (1.0,)))


def ball_log_norm(alpha: int, beta: int) -> float:
    """ln(pi^2 alpha! beta! / (alpha + beta + 2)!) for the unit ball in C^2."""
    return 2 * math.log(math.pi) + math.lgamma(alpha + 1) + math.lgamma(beta + 1) - math.lgamma(alpha + beta + 3)


@pytest.fixture
def write_json(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return path

    return _write


def random_ideals(count: int = 100, seed: int = 2024):
    """Random monomial ideals with m <= 4, at most 4 generators, exponents <= 5.

    The zero exponent vector is never drawn as a generator, since it would
    make the ideal the unit ideal with an empty staircase.
    """
    import numpy as np

    from bergman_ellipsoids import MonomialIdeal

    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        m = int(rng.integers(1, 5))
        l = int(rng.integers(1, 5))
        gens = {tuple(int(v) for v in rng.integers(0, 6, size=m)) for _ in range(l)}
        gens.discard((0,) * m)
        if not gens:
            continue
        out.append(MonomialIdeal(m, tuple(sorted(gens))))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
