#!/usr/bin/env python3
"""An exact instance on a countable piece of the sup-norm sequence space.

Domain: e0 (the zero sequence) together with points e_i (i >= 7) whose only
nonzero term is 2^-i.  Map f collapses everything to e0; g fixes e0 and
shifts e_i five slots right.  All distances are dyadic rationals, so the
inequality check over every ordered pair is exact arithmetic, and e0 is
provably the unique common fixed point on the domain.

This doubles as the fault-injection showcase: steepen phi1 and the exact
check pinpoints every violated pair.
"""

from fractions import Fraction

from matpair.linf_model import (
    E0,
    basis_point,
    domain_points,
    exhaustive_case_check,
    iterate_from,
    linf_distance,
    probe_uniqueness,
)


def main():
    print("distances are exact dyadics:")
    print("  d(e0, e7)  =", linf_distance(E0, basis_point(7)))
    print("  d(e7, e12) =", linf_distance(basis_point(7), basis_point(12)))

    cert = exhaustive_case_check(40)
    print("\nexhaustive check, indices up to 40:")
    print("  pairs:", cert.pairs_checked)
    print("  violations:", len(cert.violations))
    print("  worst margin:", cert.worst_margin, "(0 means tight, not failing)")

    print("\niteration from a few starts:")
    for start in domain_points(10):
        trace = iterate_from(start)
        chain = " -> ".join(f"e{p.index}" for p in trace.iterates)
        print(f"  {chain}   [{trace.verdict.value} in {trace.steps} steps]")

    report = probe_uniqueness(25)
    print("\nuniqueness probe consistent:", report.consistent)

    # fault injection: phi1 four times steeper than the inequality allows
    fault = exhaustive_case_check(40, phi1_slope=Fraction(1, 8))
    print("\nwith phi1 slope 1/8:")
    print("  violations:", len(fault.violations), "of", fault.pairs_checked)
    worst = fault.violations[0]
    print(f"  worst pair: (e{worst.x.index}, e{worst.y.index}), margin {worst.margin}")


if __name__ == "__main__":
    main()
