"""Exact model of a sequence-space common-fixed-point instance.

The domain is the countable subset C = {e0} u {e_i : i >= 7} of l-infinity,
where e0 is the zero sequence and e_i has a single nonzero term 2^-i.  The
map f sends everything to e0; g fixes e0 and shifts e_i to e_{i+5}.  With the
capped/sum controls below, e0 is the unique common fixed point.

All distances and control values are Fractions, so the case checks and the
short iterations here are exact, not floating-point approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .controls import ControlBundle, capped_linear, linear, sum_capped
from .fixpoint import (
    DomainSampler,
    InequalityCertificate,
    IterationTrace,
    NormedPointAdapter,
    UniquenessReport,
    alternate_iterate,
    certify_contractive_inequality,
    uniqueness_probe,
)

MIN_BASIS_INDEX = 7
SHIFT = 5
DEFAULT_PHI1_SLOPE = Fraction(1, 160)
# Positive but far below any nonzero distance the domain can produce, so the
# engine's tol > 0 precondition holds while every comparison stays exact.
EXACT_TOL = Fraction(1, 2**200)


@dataclass(frozen=True, order=True)
class LinfPoint:
    """e0 (index 0) or a basis-like point e_i with i >= MIN_BASIS_INDEX."""

    index: int

    def __post_init__(self):
        if self.index != 0 and self.index < MIN_BASIS_INDEX:
            raise ValueError(
                f"index must be 0 or >= {MIN_BASIS_INDEX}, got {self.index}"
            )


E0 = LinfPoint(0)


def basis_point(i: int) -> LinfPoint:
    if i < MIN_BASIS_INDEX:
        raise ValueError(f"basis index must be >= {MIN_BASIS_INDEX}, got {i}")
    return LinfPoint(i)


def linf_distance(x: LinfPoint, y: LinfPoint) -> Fraction:
    """Sup-distance on C: 0, 2^-i against e0, else 2^-min(i, j)."""
    if x.index == y.index:
        return Fraction(0)
    if x.index == 0:
        return Fraction(1, 2**y.index)
    if y.index == 0:
        return Fraction(1, 2**x.index)
    return Fraction(1, 2 ** min(x.index, y.index))


def map_f(x: LinfPoint) -> LinfPoint:
    return E0


def map_g(x: LinfPoint) -> LinfPoint:
    if x.index == 0:
        return E0
    return LinfPoint(x.index + SHIFT)


def example_maps():
    return map_f, map_g


def example_bundle(phi1_slope: Fraction = DEFAULT_PHI1_SLOPE) -> ControlBundle:
    """The exact control triple; phi1_slope is overridable for fault injection."""
    phi = capped_linear(Fraction(2, 10), Fraction(1, 10), Fraction(2, 100))
    phi1 = linear(Fraction(phi1_slope))
    psi = sum_capped(Fraction(1, 20), Fraction(1, 10), Fraction(1, 100))
    return ControlBundle(phi=phi, phi1=phi1, psi=psi)


def domain_points(max_index: int) -> tuple[LinfPoint, ...]:
    if max_index < MIN_BASIS_INDEX + 1:
        raise ValueError(f"max_index must be >= {MIN_BASIS_INDEX + 1}, got {max_index}")
    return (E0,) + tuple(LinfPoint(i) for i in range(MIN_BASIS_INDEX, max_index + 1))


def linf_adapter() -> NormedPointAdapter:
    return NormedPointAdapter(distance=linf_distance, eq_tol=Fraction(0))


def exhaustive_case_check(
    max_index: int, phi1_slope: Fraction = DEFAULT_PHI1_SLOPE
) -> InequalityCertificate:
    """Exact check of the contractive inequality over all ordered pairs."""
    return certify_contractive_inequality(
        map_f,
        map_g,
        example_bundle(phi1_slope),
        DomainSampler.finite(domain_points(max_index)),
        linf_adapter(),
    )


def iterate_from(start: LinfPoint, max_iter: int = 50) -> IterationTrace:
    return alternate_iterate(map_f, map_g, start, linf_adapter(), EXACT_TOL, max_iter)


def probe_uniqueness(max_index: int, max_iter: int = 50) -> UniquenessReport:
    return uniqueness_probe(
        map_f, map_g, domain_points(max_index), linf_adapter(), EXACT_TOL, max_iter
    )
