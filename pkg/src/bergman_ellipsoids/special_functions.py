"""Log-space Gamma/Beta evaluation and Gamma-ratio asymptotics.

Scalar routines go through :func:`math.lgamma` (CPython's Lanczos
approximation, g = 6.024680040776729583740234375, 13 terms).  Array routines use
:func:`scipy.special.gammaln`.  Both are exercised against an independent
mpmath/quadrature oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import gammaln

__all__ = [
    "AsymptoticExpansion",
    "log_gamma",
    "log_gamma_array",
    "log_beta",
    "log_multibeta",
    "log_multibeta_array",
    "gamma_ratio_exact",
    "gamma_ratio_expansion",
    "gamma_square_ratio_exact",
    "gamma_square_ratio_expansion",
    "ratio_expansion",
    "square_ratio_expansion",
]


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"{name} must be finite and > 0, got {x!r}")
    return x


def _check_order(order: int) -> int:
    if order not in (0, 1, 2):
        raise ValueError(f"expansion order must be 0, 1 or 2, got {order!r}")
    return order


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Truncated series ``1 + c1/x + c2/x**2`` (``terms`` holds c1, c2)."""

    order: int
    terms: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        _check_order(self.order)
        if len(self.terms) != self.order:
            raise ValueError(f"order {self.order} expansion needs {self.order} terms, got {len(self.terms)}")

    def __call__(self, x: float) -> float:
        x = _check_positive("x", x)
        total = 1.0
        for power, coeff in enumerate(self.terms, start=1):
            total += coeff / x**power
        return total


def log_gamma(x: float) -> float:
    """Return ln Gamma(x) for finite ``x > 0``."""
    return math.lgamma(_check_positive("x", x))


def log_gamma_array(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise ValueError("log_gamma_array requires finite positive arguments")
    return gammaln(x)


def log_beta(x: float, y: float) -> float:
    x = _check_positive("x", x)
    y = _check_positive("y", y)
    return math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)


def log_multibeta(a: Sequence[float]) -> float:
    """ln of the multivariate Beta function ``prod Gamma(a_j) / Gamma(sum a_j)``.

    A singleton returns exactly 0.0.
    """
    a = [_check_positive(f"a[{i}]", v) for i, v in enumerate(a)]
    if not a:
        raise ValueError("log_multibeta of an empty vector is undefined")
    if len(a) == 1:
        return 0.0
    return math.fsum(math.lgamma(v) for v in a) - math.lgamma(math.fsum(a))


def log_multibeta_array(a: np.ndarray) -> np.ndarray:
    """Row-wise :func:`log_multibeta` for an ``(n, d)`` array with ``d >= 1``."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[1] == 0:
        raise ValueError("log_multibeta_array expects a nonempty (n, d) array")
    if a.shape[1] == 1:
        return np.zeros(a.shape[0])
    return gammaln(a).sum(axis=1) - gammaln(a.sum(axis=1))


def gamma_ratio_exact(a: float, b: float, x: float) -> float:
    """``Gamma(x + a) / Gamma(x + b) * x**(b - a)`` evaluated through log-Gamma."""
    x = _check_positive("x", x)
    if a < 0 or b < 0:
        raise ValueError("a and b must be >= 0")
    if x + min(a, b) <= 0:
        raise ValueError("x + min(a, b) must be positive")
    if a == b:
        return 1.0
    return math.exp(math.lgamma(x + a) - math.lgamma(x + b) + (b - a) * math.log(x))


def ratio_expansion(a: float, b: float, order: int = 2) -> AsymptoticExpansion:
    _check_order(order)
    d = a - b
    c1 = d * (a + b - 1) / 2
    c2 = d * (d - 1) * (3 * (a + b - 1) ** 2 - a + b - 1) / 24
    return AsymptoticExpansion(order, (c1, c2)[:order])


def gamma_ratio_expansion(a: float, b: float, x: float, order: int = 2) -> float:
    return ratio_expansion(a, b, order)(x)


def gamma_square_ratio_exact(a: float, x: float) -> float:
    """``Gamma(x + a)**2 / (Gamma(x) Gamma(x + 2a))`` through log-Gamma."""
    x = _check_positive("x", x)
    if a < 0:
        raise ValueError("a must be >= 0")
    if a == 0:
        return 1.0
    return math.exp(2 * math.lgamma(x + a) - math.lgamma(x) - math.lgamma(x + 2 * a))


def square_ratio_expansion(a: float, order: int = 2) -> AsymptoticExpansion:
    _check_order(order)
    c1 = -(a**2)
    c2 = a**2 * (a**2 + 2 * a - 1) / 2
    return AsymptoticExpansion(order, (c1, c2)[:order])


def gamma_square_ratio_expansion(a: float, x: float, order: int = 2) -> float:
    if a < 0:
        raise ValueError("a must be >= 0")
    return square_ratio_expansion(a, order)(x)
