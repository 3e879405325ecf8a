"""Rewrite tests/golden/ from the current CLI (run after an intentional schema change)."""

import contextlib
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from test_cli import GOLDEN, GOLDEN_CASES, resolve_paths  # noqa: E402

from bergman_ellipsoids.cli import main  # noqa: E402


def regenerate() -> None:
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in GOLDEN_CASES:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(resolve_paths(argv))
        if code != 0:
            raise SystemExit(f"{name}: exit code {code}")
        (GOLDEN / name).write_text(buf.getvalue())
        print(f"wrote {GOLDEN / name}")


if __name__ == "__main__":
    regenerate()
