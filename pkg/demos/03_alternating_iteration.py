#!/usr/bin/env python3
"""The alternating engine on plain real numbers.

Two maps f and g are applied in strict alternation.  A run certifies
convergence only when the step gap AND both residuals d(x, f(x)), d(x, g(x))
drop below tolerance, so a pair without a common fixed point cannot
slip through on a small gap alone.
"""

from matpair import alternate_iterate, gap_monotonicity_check, uniqueness_probe
from matpair.fixpoint import absolute_value_adapter


def main():
    adapter = absolute_value_adapter()

    # Shared fixed point 2.0: both maps are x/2 + 1.
    f = g = lambda x: x / 2 + 1
    trace = alternate_iterate(f, g, 40.0, adapter, tol=1e-12)
    print("shared fixed point:")
    print("  verdict:", trace.verdict.value)
    print("  limit:", trace.final, "after", trace.steps, "steps")
    print("  first gaps:", [round(s, 4) for s in trace.gaps[:5]])
    print("  gap monotone:", gap_monotonicity_check(trace).monotone)

    # f fixes 0, g fixes 10: residuals block certification.
    trace = alternate_iterate(
        lambda x: x / 2, lambda x: x / 2 + 5, 3.0, adapter, tol=1e-9, max_iter=200
    )
    print("\nno common fixed point:")
    print("  verdict:", trace.verdict.value)
    print("  residuals:", round(trace.residual_f, 4), round(trace.residual_g, 4))

    # Same-seed starts land on the same limit; the probe reports distances.
    report = uniqueness_probe(f, g, [0.0, 100.0, -7.0], adapter, tol=1e-12)
    print("\nuniqueness probe over three starts:")
    print("  consistent:", report.consistent)
    print("  pairwise limit distances:", [d for _, _, d in report.pairwise_distances])


if __name__ == "__main__":
    main()
