"""Box covers and fiberwise exactness for random monomial ideals.

Prints one line per ideal: generators, raw and minimized cover sizes, the
number of fibers checked, and whether everything passed.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from conftest import random_ideals  # noqa: E402

from bergman_ellipsoids import box_cover, build_complex, verify_exactness  # noqa: E402


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--truncation", type=int, default=12)
    args = parser.parse_args(argv)

    start = time.perf_counter()
    failures = 0
    for ideal in random_ideals(args.count, args.seed):
        raw = box_cover(ideal, minimize=False)
        boxes = box_cover(ideal)
        report = verify_exactness(build_complex(boxes), ideal, args.truncation)
        failures += not report.passed
        gens = " ".join("(" + ",".join(map(str, g)) + ")" for g in ideal.generators)
        print(f"m={ideal.m} {gens:40s} raw={len(raw):3d} k={len(boxes):2d} fibers={report.fibers_checked:6d} {report.passed}")
    print(f"# {failures} failures, {time.perf_counter() - start:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
