"""Commutator decay over l1 shells for the sample domains.

Writes one CSV row per (domain, variable, shell). For the domain with
p=(2), q=((1),(3)) it also prints the w-direction eigenvalue along the ray
n = (0, 0, t), which tends to -1/2.
"""

import argparse
import csv
import sys
import time

from bergman_ellipsoids import DomainSpec, decay_profiles, self_commutator_eigenvalue

DOMAINS = {
    "ball_B3": DomainSpec((1.0,), ((1.0, 1.0),)),
    "p2_q1_q3": DomainSpec((2.0,), ((1.0,), (3.0,))),
    "J2_K1_L2": DomainSpec((1.0, 1.0), ((1.0, 1.0),)),
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shells", default="50,100,200,400")
    parser.add_argument("--output", default="-")
    args = parser.parse_args(argv)
    shells = [int(s) for s in args.shells.split(",")]

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["domain", "var", "shell", "max_abs_lambda"])
    for label, spec in DOMAINS.items():
        start = time.perf_counter()
        names = spec.variable_names()
        for prof in decay_profiles(spec, shells):
            for N, value in prof.shells:
                writer.writerow([label, names[prof.var], N, repr(value)])
        print(f"# {label}: {time.perf_counter() - start:.1f}s", file=sys.stderr)

    mixed = DOMAINS["p2_q1_q3"]
    for t in (10, 100, 1000, 10_000, 100_000):
        lam = self_commutator_eigenvalue(mixed, (0, 0, t), 1).lambda_
        print(f"# lambda_w11(0, 0, {t}) = {lam:.6f}", file=sys.stderr)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
