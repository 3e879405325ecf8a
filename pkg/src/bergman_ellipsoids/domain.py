"""Intersections of complex ellipsoids and Bergman norms of monomials.

The domain is

    { sum_j |z_j|^(2 p_j) + sum_l |w_kl|^(2 q_kl) < 1  for k = 1..K }

in C^m with m = J + sum_k L_k.  Variables are ordered z_1..z_J, then the
w-block of each constraint in constraint order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, Sequence

import numpy as np
from scipy.special import gammaln

from .indices import MultiIndex, ball_array, canonical_key
from .special_functions import log_beta, log_multibeta

__all__ = [
    "ConfigError",
    "DomainSpec",
    "NormTable",
    "parse_domain",
    "load_domain",
    "normalize_domain",
    "log_norm",
    "log_norm_array",
    "log_norm_pure_ellipsoid",
    "log_norm_ratio",
    "monte_carlo_log_norm",
    "MAX_ORACLE_DIM",
]

MAX_ORACLE_DIM = 6


class ConfigError(ValueError):
    """Invalid configuration; the message starts with the offending field path."""


@dataclass(frozen=True)
class DomainSpec:
    p: tuple[float, ...]
    constraints: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if len(self.p) < 1:
            raise ConfigError("p: need at least one z-exponent (J >= 1)")
        if len(self.constraints) < 1:
            raise ConfigError("constraints: need at least one constraint (K >= 1)")
        for j, v in enumerate(self.p):
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(f"p[{j}]: exponent must be finite and > 0, got {v!r}")
        for k, q in enumerate(self.constraints):
            for l, v in enumerate(q):
                if not (math.isfinite(v) and v > 0):
                    raise ConfigError(f"constraints[{k}].q[{l}]: exponent must be finite and > 0, got {v!r}")

    @property
    def J(self) -> int:
        return len(self.p)

    @property
    def K(self) -> int:
        return len(self.constraints)

    @property
    def L(self) -> tuple[int, ...]:
        return tuple(len(q) for q in self.constraints)

    @property
    def m(self) -> int:
        return self.J + sum(self.L)

    @property
    def is_pure_ellipsoid(self) -> bool:
        return all(len(q) == 0 for q in self.constraints)

    @property
    def exponents(self) -> np.ndarray:
        """Per-variable exponent (p_j or q_kl) in canonical variable order."""
        return np.array(self.p + tuple(v for q in self.constraints for v in q))

    def variable_names(self) -> list[str]:
        names = [f"z{j + 1}" for j in range(self.J)]
        for k, q in enumerate(self.constraints):
            names += [f"w{k + 1}{l + 1}" for l in range(len(q))]
        return names

    def blocks(self) -> list[slice]:
        """Slices of the w-blocks inside a multi-index, one per constraint."""
        out, start = [], self.J
        for q in self.constraints:
            out.append(slice(start, start + len(q)))
            start += len(q)
        return out

    def split(self, n: Sequence[int]) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
        n = _as_index(self, n)
        return n[: self.J], [n[s] for s in self.blocks()]

    def to_dict(self) -> dict:
        return {"p": list(self.p), "constraints": [{"q": list(q)} for q in self.constraints]}


def _as_index(spec: DomainSpec, n: Sequence[int]) -> MultiIndex:
    n = tuple(int(v) for v in n)
    if len(n) != spec.m:
        raise ValueError(f"multi-index has length {len(n)}, domain dimension is {spec.m}")
    if any(v < 0 for v in n):
        raise ValueError(f"multi-index entries must be >= 0, got {n}")
    return n


def _exponent_list(value: Any, path: str) -> tuple[float, ...]:
    if not isinstance(value, list):
        raise ConfigError(f"{path}: expected a list of numbers")
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{path}[{i}]: expected a number, got {v!r}")
        out.append(float(v))
    return tuple(out)


def parse_domain(config: Mapping[str, Any] | str) -> DomainSpec:
    """Build a :class:`DomainSpec` from ``{"p": [...], "constraints": [{"q": [...]}, ...]}``.

    ``config`` may be a mapping or a JSON string.  A per-constraint ``"p"``
    key (constraint-dependent z-exponents) is recognised but rejected.
    """
    if isinstance(config, str):
        try:
            config = json.loads(config)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"<root>: invalid JSON ({exc})") from None
    if not isinstance(config, Mapping):
        raise ConfigError("<root>: expected a JSON object")
    if "p" not in config:
        raise ConfigError("p: missing")
    if "constraints" not in config:
        raise ConfigError("constraints: missing")
    p = _exponent_list(config["p"], "p")
    raw = config["constraints"]
    if not isinstance(raw, list):
        raise ConfigError("constraints: expected a list")
    constraints = []
    for k, c in enumerate(raw):
        if not isinstance(c, Mapping):
            raise ConfigError(f"constraints[{k}]: expected an object")
        if "p" in c:
            raise ConfigError(f"constraints[{k}].p: constraint-dependent z-exponents are not supported")
        unknown = set(c) - {"q"}
        if unknown:
            raise ConfigError(f"constraints[{k}]: unknown keys {sorted(unknown)}")
        constraints.append(_exponent_list(c.get("q", []), f"constraints[{k}].q"))
    return DomainSpec(p, tuple(constraints))


def load_domain(path: str | Path) -> DomainSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"<file>: cannot read domain config {path}: {exc}") from None
    return parse_domain(text)


def normalize_domain(spec: DomainSpec) -> DomainSpec:
    """Drop constraints without w-variables when another constraint has some.

    A constraint with ``L_k = 0`` reads ``sum |z_j|^(2p_j) < 1``, which every
    constraint with ``L_k >= 1`` already implies.  If all constraints are of
    this kind the result is the pure ellipsoid, represented with a single
    empty constraint.
    """
    kept = tuple(q for q in spec.constraints if len(q) > 0)
    if not kept:
        return DomainSpec(spec.p, ((),))
    if len(kept) == len(spec.constraints):
        return spec
    return DomainSpec(spec.p, kept)


def log_norm_pure_ellipsoid(spec: DomainSpec, alpha: Sequence[int]) -> float:
    """ln of ``pi^J / prod p_j * prod Gamma((a_j+1)/p_j) / Gamma(1 + sum (a_j+1)/p_j)``."""
    if not spec.is_pure_ellipsoid:
        raise ValueError("log_norm_pure_ellipsoid needs a domain without w-variables")
    alpha = _as_index(spec, alpha)
    a = [(aj + 1) / pj for aj, pj in zip(alpha, spec.p)]
    return (
        spec.J * math.log(math.pi)
        - math.fsum(math.log(pj) for pj in spec.p)
        + math.fsum(math.lgamma(v) for v in a)
        - math.lgamma(1 + math.fsum(a))
    )


def log_norm(spec: DomainSpec, n: Sequence[int]) -> float:
    """Natural log of the squared Bergman norm of the monomial ``z^alpha w^beta``."""
    spec = normalize_domain(spec)
    n = _as_index(spec, n)
    if spec.is_pure_ellipsoid:
        return log_norm_pure_ellipsoid(spec, n)
    alpha, betas = spec.split(n)
    a = [(aj + 1) / pj for aj, pj in zip(alpha, spec.p)]
    bq = [[(b + 1) / q for b, q in zip(beta, qs)] for beta, qs in zip(betas, spec.constraints)]
    s = [math.fsum(block) for block in bq]
    const = (
        spec.K * math.log(2.0) + spec.m * math.log(math.pi) - math.fsum(math.log(v) for v in spec.exponents)
    )
    return (
        const
        - math.fsum(math.log(2 * sk) for sk in s)
        + log_beta(math.fsum(a), math.fsum(s) + 1)
        + log_multibeta(a)
        + math.fsum(log_multibeta(block) for block in bq)
    )


def log_norm_array(spec: DomainSpec, n: np.ndarray) -> np.ndarray:
    """Vectorised :func:`log_norm` over the rows of an ``(count, m)`` array.

    Uses the cancelled form

        const + sum_i lnG((n_i+1)/e_i) - sum_k lnG(s_k + 1) + lnG(S + 1) - lnG(a + S + 1)

    with ``a`` the z-sum, ``s_k`` the block sums and ``S = sum s_k``; the
    per-coordinate terms come from lookup tables.  :func:`log_norm` keeps the
    uncancelled Beta-function form, and the tests compare the two.
    """
    spec = normalize_domain(spec)
    n = np.asarray(n, dtype=np.int64)
    if n.ndim != 2 or n.shape[1] != spec.m:
        raise ValueError(f"expected shape (count, {spec.m}), got {n.shape}")
    if len(n) == 0:
        return np.zeros(0)
    if n.min() < 0:
        raise ValueError("multi-index entries must be >= 0")
    expo = spec.exponents
    out = np.zeros(len(n))
    for i in range(spec.m):
        col = n[:, i]
        table = gammaln((np.arange(int(col.max()) + 1) + 1.0) / expo[i])
        out += table[col]
    scaled = (n + 1.0) / expo
    a_sum = scaled[:, : spec.J].sum(axis=1)
    if spec.is_pure_ellipsoid:
        const = spec.J * math.log(math.pi) - np.log(expo).sum()
        return out + const - gammaln(1 + a_sum)
    const = spec.m * math.log(math.pi) - np.log(expo).sum()
    s_total = np.zeros(len(n))
    for block in spec.blocks():
        sk = scaled[:, block].sum(axis=1)
        s_total += sk
        out -= gammaln(sk + 1)
    out += const + gammaln(s_total + 1) - gammaln(a_sum + s_total + 1)
    return out


def log_norm_ratio(spec: DomainSpec, n: Sequence[int], var: int, delta: int) -> float:
    """``ln w(n + e_var) - ln w(n)`` for ``delta=+1``, ``ln w(n) - ln w(n - e_var)`` for ``-1``."""
    n = _as_index(spec, n)
    if not 0 <= var < spec.m:
        raise ValueError(f"variable index {var} out of range for dimension {spec.m}")
    if delta == 1:
        up = n[:var] + (n[var] + 1,) + n[var + 1 :]
        return log_norm(spec, up) - log_norm(spec, n)
    if delta == -1:
        if n[var] == 0:
            raise IndexError(f"cannot lower coordinate {var} of {n} below zero")
        down = n[:var] + (n[var] - 1,) + n[var + 1 :]
        return log_norm(spec, n) - log_norm(spec, down)
    raise ValueError(f"delta must be +1 or -1, got {delta!r}")


class NormTable(Mapping):
    """Read-only table of ``ln w(n)`` for all ``|n| <= N`` (canonical order)."""

    def __init__(self, spec: DomainSpec, N: int):
        if N < 0:
            raise ValueError("truncation N must be >= 0")
        self.spec = spec
        self.N = N
        idx = ball_array(spec.m, N)
        values = log_norm_array(spec, idx)
        self._table = MappingProxyType({tuple(int(v) for v in row): float(x) for row, x in zip(idx, values)})

    def __getitem__(self, n: MultiIndex) -> float:
        return self._table[tuple(n)]

    def __iter__(self):
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def get_or_compute(self, n: MultiIndex) -> float:
        n = tuple(n)
        value = self._table.get(n)
        return log_norm(self.spec, n) if value is None else value

    def rows(self) -> list[tuple[MultiIndex, float]]:
        return sorted(self._table.items(), key=lambda kv: canonical_key(kv[0]))


def monte_carlo_log_norm(
    spec: DomainSpec,
    n: Sequence[int],
    samples: int,
    seed: int,
    chunk_size: int = 1 << 18,
) -> tuple[float, float]:
    """Monte Carlo estimate of ``ln w(n)`` and its standard error on the log scale.

    In polar coordinates the norm is ``pi^m`` times the integral of
    ``prod u^n`` over the unit cube of squared moduli ``u``, restricted to the
    domain.  Uniform points in that cube are drawn in chunks, each chunk from
    its own PCG64 stream spawned from ``SeedSequence(seed)``; the reduction
    runs in chunk order so the result is reproducible bit for bit.
    """
    n = _as_index(spec, n)
    if spec.m > MAX_ORACLE_DIM:
        raise ValueError(f"Monte Carlo oracle limited to m <= {MAX_ORACLE_DIM}, got m={spec.m}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    expo = spec.exponents
    power = np.array(n, dtype=float)
    z_cols = slice(0, spec.J)
    blocks = spec.blocks()

    n_chunks = -(-samples // chunk_size)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    total = 0.0
    total_sq = 0.0
    remaining = samples
    for ss in streams:
        size = min(chunk_size, remaining)
        remaining -= size
        rng = np.random.Generator(np.random.PCG64(ss))
        u = rng.random((size, spec.m))
        powered = u**expo
        z_part = powered[:, z_cols].sum(axis=1)
        inside = np.ones(size, dtype=bool)
        for block in blocks:
            inside &= z_part + powered[:, block].sum(axis=1) < 1.0
        f = np.where(inside, np.prod(u**power, axis=1), 0.0)
        total += f.sum()
        total_sq += (f * f).sum()
    mean = float(total) / samples
    if mean <= 0:
        raise ArithmeticError("no Monte Carlo sample landed inside the domain")
    var = max(total_sq / samples - mean * mean, 0.0)
    stderr = math.sqrt(var / samples) / mean if samples > 1 else math.inf
    return spec.m * math.log(math.pi) + math.log(mean), float(stderr)
