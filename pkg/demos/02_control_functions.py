#!/usr/bin/env python3
"""Control functions and their sampled property checks.

The contraction argument in this package is phrased with three controls:
an altering distance phi, a second one phi1, and a two-argument psi.  The
verifiers below collect grid evidence that a candidate actually has the
required shape (zero at zero, monotone, continuous, dominated).
"""

from fractions import Fraction

from matpair import (
    ControlBundle,
    GridSpec,
    capped_linear,
    linear,
    max_scaled,
    verify_adf_properties,
    verify_psi_dominance,
)


def main():
    grid = GridSpec(upper=2.0, points=128)

    report = verify_adf_properties(linear(0.5), grid)
    print("linear(0.5):", "ok" if report.ok else "NOT ok")
    print("  strictly increasing:", report.strictly_increasing)
    print("  continuity moduli:", [(round(h, 5), round(j, 5)) for h, j in report.continuity_moduli])

    # A capped control plateaus past its cap. Still a valid non-decreasing
    # control, and the report says so instead of failing it.
    capped = capped_linear(Fraction(2, 10), Fraction(1, 10), Fraction(2, 100))
    report = verify_adf_properties(capped, grid)
    print("\ncapped_linear(0.2, cap 0.1):", "ok" if report.ok else "NOT ok")
    print("  strictly increasing:", report.strictly_increasing, "(plateau expected)")

    # psi must sit below phi on at least one argument of every pair.
    phi = linear(1.0)
    good = ControlBundle(phi=phi, phi1=linear(0.05), psi=max_scaled(0.5, phi))
    bad = ControlBundle(phi=phi, phi1=linear(0.05), psi=max_scaled(2.0, phi))
    for name, bundle in (("alpha=0.5", good), ("alpha=2.0", bad)):
        rep = verify_psi_dominance(bundle, GridSpec(upper=2.0, points=48))
        print(
            f"\npsi dominance, {name}: {'ok' if rep.ok else 'violated'} "
            f"({rep.pairs_checked} pairs, {len(rep.violations)} violations)"
        )

    # Fraction parameters evaluate exactly on Fraction inputs
    print("\nexact evaluation:", capped(Fraction(1, 128)), "=", Fraction(1, 128) / 5)


if __name__ == "__main__":
    main()
