#!/usr/bin/env python3
"""Survey the local-ring families F_p[x]/(x^2): existence, unit classes, axioms.

For each (p, n) the script reports whether (proj R, Id) admits an
n-angulation, prints the unit-equivalence table of the R(u) generators and,
where the class exists, runs a short axiom suite.
"""

import argparse
import sys

sys.path.insert(0, "src")

from nangulate.builders import dual_numbers
from nangulate.engine import build_context
from nangulate.linalg import field_by_name
from nangulate.verify import local_ring_existence, unit_equivalence_table, verify_axioms


def survey(p, n, samples, seed):
    field = field_by_name(f"F{p}")
    A = dual_numbers(field)
    exists = local_ring_existence(p, n)
    print(f"== F{p}[x]/(x^2), n = {n}: {'exists' if exists else 'no n-angulation (n odd, 2p != 0)'}")
    table = unit_equivalence_table(A, n)
    units = sorted({u for u, _ in table})
    header = "      " + "  ".join(f"R({v})" for v in units)
    print(header)
    for u in units:
        row = "  ".join("yes " if table[(u, v)] else "no  " for v in units)
        print(f"R({u})  {row}")
    if exists and samples:
        ctx = build_context(A, n, "local-ring", unit=A.unit)
        rep = verify_axioms(ctx, samples=samples, seed=seed)
        verdicts = ", ".join(f"{k}={'ok' if v['pass'] else 'FAIL'}" for k, v in rep.axioms.items())
        print(f"axioms at {samples} samples: {verdicts}")
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--periods", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for p in args.primes:
        for n in args.periods:
            survey(p, n, args.samples, args.seed)


if __name__ == "__main__":
    main()
