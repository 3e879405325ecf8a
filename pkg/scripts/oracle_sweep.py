"""Formula vs Monte Carlo on random domains (m <= 4, exponents in (0.5, 3], n <= 4)."""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from test_acceptance import random_oracle_cases  # noqa: E402

from bergman_ellipsoids import log_norm, monte_carlo_log_norm  # noqa: E402


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=20)
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=20240601)
    args = parser.parse_args(argv)

    zs = []
    print("p,constraints,n,log_omega,log_omega_mc,stderr,z")
    for i, (spec, n) in enumerate(random_oracle_cases(args.cases, args.seed)):
        formula = log_norm(spec, n)
        est, se = monte_carlo_log_norm(spec, n, args.samples, seed=1000 + i)
        z = (est - formula) / se
        zs.append(z)
        q = "|".join(";".join(f"{v:.3f}" for v in qk) for qk in spec.constraints)
        p = ";".join(f"{v:.3f}" for v in spec.p)
        print(f"{p},{q},{';'.join(map(str, n))},{formula!r},{est!r},{se!r},{z:.3f}")
    zs = np.abs(zs)
    print(f"# |z| <= 3: {np.sum(zs <= 3)}/{len(zs)}, max |z| = {zs.max():.2f}", file=sys.stderr)


if __name__ == "__main__":
    main()
