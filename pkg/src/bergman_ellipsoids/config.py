from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .domain import ConfigError

FORMATS = ("csv", "json")


def parse_shells(text: str) -> tuple[int, ...]:
    """Parse ``"10,20,40"``; the result must be nonempty and strictly increasing."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ConfigError("shells: empty shell list")
    try:
        shells = tuple(int(p) for p in parts)
    except ValueError:
        raise ConfigError(f"shells: expected comma-separated integers, got {text!r}") from None
    return shells


@dataclass(frozen=True)
class RunConfig:
    domain: Path | None = None
    ideal: Path | None = None
    truncation: int = 4
    shells: tuple[int, ...] = (10, 20, 40, 80)
    samples: int = 100_000
    seed: int = 0
    tolerance: float = 3.0
    output: Path | None = None
    format: str = "csv"
    minimize: bool = True

    def __post_init__(self) -> None:
        if self.truncation < 0:
            raise ConfigError("truncation: must be >= 0")
        if not self.shells:
            raise ConfigError("shells: empty shell list")
        if any(s < 0 for s in self.shells):
            raise ConfigError("shells: must be >= 0")
        if any(b <= a for a, b in zip(self.shells, self.shells[1:])):
            raise ConfigError("shells: must be strictly increasing")
        if self.samples < 1:
            raise ConfigError("samples: must be >= 1")
        if not self.tolerance > 0:
            raise ConfigError("tolerance: must be > 0")
        if self.format not in FORMATS:
            raise ConfigError(f"format: must be one of {FORMATS}")
