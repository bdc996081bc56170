"""Exact sequence-space fixture.

Every distance is a dyadic rational, so equalities below are exact; no
approx-comparisons anywhere in this file.
"""

from fractions import Fraction

import pytest

from matpair.linf_model import (
    DEFAULT_PHI1_SLOPE,
    E0,
    EXACT_TOL,
    LinfPoint,
    basis_point,
    domain_points,
    example_bundle,
    example_maps,
    exhaustive_case_check,
    iterate_from,
    linf_adapter,
    linf_distance,
    map_f,
    map_g,
    probe_uniqueness,
)

FAULT_SLOPE = Fraction(1, 8)  # steep enough to break the inequality


# ---------------------------------------------------------------------------
# points and distances


def test_point_validation():
    assert LinfPoint(0) == E0
    assert LinfPoint(7).index == 7
    for bad in (1, 6, -1, 3):
        with pytest.raises(ValueError):
            LinfPoint(bad)


def test_basis_point_helper():
    assert basis_point(9) == LinfPoint(9)
    with pytest.raises(ValueError):
        basis_point(2)


def test_distance_known_values():
    assert linf_distance(E0, basis_point(7)) == Fraction(1, 128)
    assert linf_distance(basis_point(10), E0) == Fraction(1, 1024)
    assert linf_distance(basis_point(7), basis_point(12)) == Fraction(1, 128)
    assert linf_distance(basis_point(12), basis_point(7)) == Fraction(1, 128)
    assert linf_distance(E0, E0) == 0
    assert linf_distance(basis_point(8), basis_point(8)) == 0


def test_distance_is_exact_fraction():
    d = linf_distance(basis_point(7), basis_point(8))
    assert isinstance(d, Fraction)
    assert d == Fraction(1, 128)


def test_distance_metric_axioms_exhaustive():
    pts = domain_points(16)
    for x in pts:
        for y in pts:
            dxy = linf_distance(x, y)
            assert dxy == linf_distance(y, x)
            assert (dxy == 0) == (x == y)
            for z in pts:
                assert dxy <= linf_distance(x, z) + linf_distance(z, y)


# ---------------------------------------------------------------------------
# the two maps


def test_map_f_is_constant_zero_point():
    assert map_f(E0) == E0
    assert map_f(basis_point(7)) == E0
    assert map_f(basis_point(40)) == E0


def test_map_g_shifts_by_five():
    assert map_g(E0) == E0
    assert map_g(basis_point(7)) == basis_point(12)
    assert map_g(basis_point(20)) == basis_point(25)


def test_example_maps_returns_both():
    f, g = example_maps()
    assert f(basis_point(9)) == E0
    assert g(basis_point(9)) == basis_point(14)


def test_zero_point_is_the_common_fixed_point():
    assert map_f(E0) == E0 and map_g(E0) == E0
    # no basis point is fixed by either map
    for i in (7, 8, 15):
        assert map_f(basis_point(i)) != basis_point(i)
        assert map_g(basis_point(i)) != basis_point(i)


# ---------------------------------------------------------------------------
# domain and bundle plumbing


def test_domain_points_layout():
    pts = domain_points(10)
    assert pts == (E0, basis_point(7), basis_point(8), basis_point(9), basis_point(10))
    with pytest.raises(ValueError):
        domain_points(7)


def test_adapter_is_exact():
    adapter = linf_adapter()
    assert adapter.eq_tol == 0
    assert adapter.distance(E0, basis_point(7)) == Fraction(1, 128)


def test_bundle_default_slope():
    bundle = example_bundle()
    assert bundle.phi1.params == (DEFAULT_PHI1_SLOPE,)
    assert bundle.phi(Fraction(1, 128)) == Fraction(1, 640)
    assert bundle.phi(Fraction(1, 2)) == Fraction(1, 50)  # past the cap


def test_exact_tol_is_positive_and_below_any_gap():
    assert EXACT_TOL > 0
    assert EXACT_TOL < Fraction(1, 2**64)


# ---------------------------------------------------------------------------
# the exhaustive case check


def test_case_check_holds_with_zero_worst_margin():
    cert = exhaustive_case_check(20)
    assert cert.exhaustive
    assert cert.pairs_checked == 15 * 15
    assert cert.ok
    assert cert.worst_margin == 0  # tight at pairs with equal arguments


def test_case_check_margins_are_fractions():
    cert = exhaustive_case_check(12)
    assert isinstance(cert.worst_margin, Fraction)


def test_steep_phi1_breaks_the_inequality():
    cert = exhaustive_case_check(20, phi1_slope=FAULT_SLOPE)
    assert not cert.ok
    assert cert.worst_margin == Fraction(-13, 20480)
    first = cert.violations[0]
    assert (first.x, first.y) == (E0, basis_point(7))
    assert first.margin == Fraction(-13, 20480)


def test_fault_violation_count_at_small_index():
    cert = exhaustive_case_check(20, phi1_slope=FAULT_SLOPE)
    # every off-diagonal pair fails at this slope; the 15 diagonal pairs
    # have phi1(0) = 0 and keep their nonnegative margins
    assert len(cert.violations) == 15 * 15 - 15


# ---------------------------------------------------------------------------
# iteration and uniqueness


def test_iteration_from_basis_point_two_exact_steps():
    trace = iterate_from(basis_point(7))
    assert trace.converged
    assert trace.final == E0
    assert trace.steps <= 2
    assert trace.iterates[1] == E0  # f lands immediately
    assert trace.residual_f == 0 and trace.residual_g == 0
    assert trace.gaps[0] == Fraction(1, 128)


def test_iteration_from_zero_point():
    trace = iterate_from(E0)
    assert trace.converged
    assert trace.final == E0
    assert trace.gaps[0] == 0


def test_all_starts_reach_zero_point():
    for start in domain_points(30):
        trace = iterate_from(start)
        assert trace.converged and trace.final == E0


def test_probe_uniqueness_consistent():
    report = probe_uniqueness(25)
    assert report.all_converged
    assert report.consistent
    assert all(d == 0 for _, _, d in report.pairwise_distances)
