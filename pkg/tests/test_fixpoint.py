"""Alternating iteration engine and inequality certificates, on plain reals.

Real numbers with |x - y| are the simplest space the engine runs on, which
keeps every expected value computable by hand.
"""

import math
from fractions import Fraction

import pytest

from matpair.controls import ControlBundle, linear, max_scaled
from matpair.fixpoint import (
    DomainSampler,
    Verdict,
    absolute_value_adapter,
    alternate_iterate,
    certify_contractive_inequality,
    gap_monotonicity_check,
    uniqueness_probe,
)
from matpair.spectra import NonFiniteMatrixError

ADAPTER = absolute_value_adapter()
TOL = 1e-12


def halving_to_two(x):
    return x / 2 + 1  # fixed point 2


# ---------------------------------------------------------------------------
# alternate_iterate


def test_converges_to_common_fixed_point():
    trace = alternate_iterate(halving_to_two, halving_to_two, 0.0, ADAPTER, TOL)
    assert trace.verdict is Verdict.CONVERGED
    assert trace.converged
    assert trace.final == pytest.approx(2.0, abs=1e-10)
    assert trace.residual_f <= TOL
    assert trace.residual_g <= TOL
    assert trace.failed_index is None


def test_first_step_uses_first_map():
    trace = alternate_iterate(
        lambda x: 10.0, lambda x: 20.0, 0.0, ADAPTER, TOL, max_iter=6
    )
    # x1 = f(x0), x2 = g(x1), strict alternation
    assert trace.iterates[1] == 10.0
    assert trace.iterates[2] == 20.0
    assert trace.iterates[3] == 10.0
    assert trace.verdict is Verdict.MAX_ITERATIONS


def test_distinct_fixed_points_never_certify():
    # f fixes 0, g fixes 10; the pair has no common fixed point, so the
    # residual probe must keep the verdict away from converged
    trace = alternate_iterate(
        lambda x: x / 2, lambda x: x / 2 + 5, 3.0, ADAPTER, 1e-9, max_iter=500
    )
    assert trace.verdict is Verdict.MAX_ITERATIONS
    assert max(trace.residual_f, trace.residual_g) > 1e-9


def test_max_iterations_recomputes_residuals_at_final():
    f = lambda x: x / 2 + 1
    g = lambda x: x / 2 + 1
    trace = alternate_iterate(f, g, 100.0, ADAPTER, 1e-15, max_iter=4)
    assert trace.verdict is Verdict.MAX_ITERATIONS
    z = trace.final
    assert trace.residual_f == abs(z - f(z))
    assert trace.residual_g == abs(z - g(z))


def test_trace_bookkeeping():
    trace = alternate_iterate(halving_to_two, halving_to_two, 0.0, ADAPTER, 1e-3)
    assert trace.steps == len(trace.iterates) - 1
    assert len(trace.gaps) == trace.steps
    assert trace.final is trace.iterates[-1]


def test_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        alternate_iterate(halving_to_two, halving_to_two, 0.0, ADAPTER, 0.0)
    with pytest.raises(ValueError):
        alternate_iterate(halving_to_two, halving_to_two, 0.0, ADAPTER, -1e-9)


def test_rejects_bad_max_iter():
    with pytest.raises(ValueError):
        alternate_iterate(halving_to_two, halving_to_two, 0.0, ADAPTER, TOL, max_iter=1)
    with pytest.raises(ValueError):
        alternate_iterate(halving_to_two, halving_to_two, 0.0, ADAPTER, TOL, max_iter=2.5)


def test_overflow_stops_with_diverged_verdict():
    trace = alternate_iterate(
        lambda x: x * 1e300, lambda x: x, 1.0, ADAPTER, TOL, max_iter=50
    )
    assert trace.verdict is Verdict.DIVERGED_NONFINITE
    assert trace.failed_index is not None
    assert trace.residual_f == math.inf


def test_nonfinite_start_detected():
    trace = alternate_iterate(halving_to_two, halving_to_two, math.nan, ADAPTER, TOL)
    assert trace.verdict is Verdict.DIVERGED_NONFINITE
    assert trace.failed_index == 0


def test_map_raising_nonfinite_error_handled():
    def f(x):
        raise NonFiniteMatrixError("poof")

    trace = alternate_iterate(f, lambda x: x, 1.0, ADAPTER, TOL)
    assert trace.verdict is Verdict.DIVERGED_NONFINITE
    assert trace.failed_index == 1


def test_exact_fraction_space():
    f = lambda x: x / 2
    adapter = absolute_value_adapter(eq_tol=Fraction(0))
    trace = alternate_iterate(f, f, Fraction(1), adapter, Fraction(1, 2**40))
    assert trace.converged
    assert isinstance(trace.final, Fraction)
    assert all(isinstance(gap, Fraction) for gap in trace.gaps)


# ---------------------------------------------------------------------------
# samplers and the inequality certificate


def test_domain_sampler_finite():
    s = DomainSampler.finite([0.0, 1.0])
    assert s.is_exhaustive
    with pytest.raises(ValueError):
        DomainSampler.finite([])


def test_domain_sampler_random():
    s = DomainSampler.random(lambda rng: float(rng.uniform()))
    assert not s.is_exhaustive


def _const_zero_setup(phi1_slope):
    # f = g = 0 on the nonnegative reals: d(f(x), g(y)) = 0 always, so the
    # inequality reduces to 0 <= psi(x, y) - phi1(|x - y|)
    bundle = ControlBundle(
        phi=linear(1.0), phi1=linear(phi1_slope), psi=max_scaled(0.5, linear(1.0))
    )
    zero = lambda x: 0.0
    return zero, zero, bundle


def test_exhaustive_certificate_passes():
    f, g, bundle = _const_zero_setup(0.1)
    cert = certify_contractive_inequality(
        f, g, bundle, DomainSampler.finite([0.0, 1.0, 2.0]), ADAPTER
    )
    assert cert.exhaustive
    assert cert.pairs_checked == 9
    assert cert.ok
    assert cert.worst_margin == 0.0  # the (0, 0) pair is tight


def test_exhaustive_certificate_detects_violations_sorted():
    f, g, bundle = _const_zero_setup(1.0)  # steep phi1 breaks distant pairs
    cert = certify_contractive_inequality(
        f, g, bundle, DomainSampler.finite([0.0, 1.0, 2.0]), ADAPTER
    )
    assert not cert.ok
    assert cert.worst_margin == -1.0
    margins = [v.margin for v in cert.violations]
    assert margins == sorted(margins)
    # ties broken by sample index
    worst_two = [v.index for v in cert.violations[:2]]
    assert worst_two == sorted(worst_two)
    first = cert.violations[0]
    assert first.margin == first.rhs - first.lhs


def test_random_certificate_is_seed_deterministic():
    f, g, bundle = _const_zero_setup(0.1)
    sampler = DomainSampler.random(lambda rng: float(rng.uniform(0.0, 2.0)))
    a = certify_contractive_inequality(f, g, bundle, sampler, ADAPTER, pairs=50, seed=3)
    b = certify_contractive_inequality(f, g, bundle, sampler, ADAPTER, pairs=50, seed=3)
    c = certify_contractive_inequality(f, g, bundle, sampler, ADAPTER, pairs=50, seed=4)
    assert a.worst_margin == b.worst_margin
    assert a.pairs_checked == 50
    assert not a.exhaustive
    assert c.worst_margin != a.worst_margin


def test_random_certificate_requires_pair_count():
    f, g, bundle = _const_zero_setup(0.1)
    sampler = DomainSampler.random(lambda rng: float(rng.uniform()))
    with pytest.raises(ValueError):
        certify_contractive_inequality(f, g, bundle, sampler, ADAPTER)


# ---------------------------------------------------------------------------
# gap monotonicity and the uniqueness probe


def test_gap_report_monotone_on_contraction():
    trace = alternate_iterate(halving_to_two, halving_to_two, 100.0, ADAPTER, 1e-10)
    report = gap_monotonicity_check(trace)
    assert report.monotone
    assert report.max_increase <= 0


def test_gap_report_needs_three_iterates():
    trace = alternate_iterate(lambda x: 1.0, lambda x: 1.0, 1.0, ADAPTER, 0.5)
    assert len(trace.iterates) == 2
    with pytest.raises(ValueError):
        gap_monotonicity_check(trace)


def test_gap_report_flags_increase():
    # two maps with distinct fixed points settle into a 2-cycle whose gap
    # sequence oscillates
    trace = alternate_iterate(
        lambda x: x / 2, lambda x: x / 2 + 5, 0.0, ADAPTER, 1e-9, max_iter=30
    )
    report = gap_monotonicity_check(trace)
    assert not report.monotone
    assert report.max_increase > 0


def test_uniqueness_probe_consistent():
    report = uniqueness_probe(
        halving_to_two, halving_to_two, [0.0, 50.0, -3.0], ADAPTER, 1e-10
    )
    assert report.all_converged
    assert report.consistent
    assert all(d <= 1e-9 for _, _, d in report.pairwise_distances)


def test_uniqueness_probe_flags_distinct_limits():
    def two_basins(x):
        return x / 2 if x < 20 else 40 + (x - 40) / 2  # fixes 0 and 40

    report = uniqueness_probe(two_basins, two_basins, [1.0, 100.0], ADAPTER, 1e-10)
    assert report.all_converged
    assert not report.consistent
    assert report.flagged
    i, j, d = report.flagged[0]
    assert d == pytest.approx(40.0, abs=1e-6)
