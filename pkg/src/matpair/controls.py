"""Control functions for contraction arguments.

An altering distance is a map [0, inf) -> [0, inf) that is zero exactly at
zero, monotone increasing and continuous.  A pair control takes two
nonnegative arguments and is dominated by the altering distance on whichever
argument is positive.  Both kinds evaluate with whatever numeric type the
parameters carry, so Fraction-parameterized controls stay exact on Fraction
inputs.

Verifiers here are sampled evidence on grids, not proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

MONOTONE_SLACK = 1e-12
PLATEAU_EPS = 1e-15


def _check_nonneg(t, what: str):
    if t < 0:
        raise ValueError(f"{what} argument must be >= 0, got {t!r}")


@dataclass(frozen=True)
class AlteringDistance:
    """Single-argument control; callable on t >= 0."""

    kind: str
    params: tuple = ()
    fn: Callable = field(default=None, repr=False, compare=False)
    strict: bool = True  # strictly increasing (capped kinds plateau)

    def __call__(self, t):
        _check_nonneg(t, "altering-distance")
        return self.fn(t)


@dataclass(frozen=True)
class PairControl:
    """Two-argument control; callable on t1, t2 >= 0."""

    kind: str
    params: tuple = ()
    fn: Callable = field(default=None, repr=False, compare=False)

    def __call__(self, t1, t2):
        _check_nonneg(t1, "pair-control")
        _check_nonneg(t2, "pair-control")
        return self.fn(t1, t2)


@dataclass(frozen=True)
class ControlBundle:
    """The (phi, phi1, psi) triple a contractive inequality is stated with."""

    phi: AlteringDistance
    phi1: AlteringDistance
    psi: PairControl


def linear(c) -> AlteringDistance:
    """phi(t) = c*t with c > 0."""
    if not c > 0:
        raise ValueError(f"linear slope must be positive, got {c!r}")
    return AlteringDistance("linear", (c,), fn=lambda t: c * t)


def capped_linear(c, cap_at, cap_value) -> AlteringDistance:
    """phi(t) = c*t for t <= cap_at, else the constant cap_value."""
    if not (c > 0 and cap_at > 0 and cap_value > 0):
        raise ValueError("capped_linear parameters must be positive")
    return AlteringDistance(
        "capped_linear",
        (c, cap_at, cap_value),
        fn=lambda t: c * t if t <= cap_at else cap_value,
        strict=False,
    )


def power(c, p) -> AlteringDistance:
    """phi(t) = c * t**p with c > 0, p > 0."""
    if not (c > 0 and p > 0):
        raise ValueError("power parameters must be positive")
    return AlteringDistance("power", (c, p), fn=lambda t: c * t**p)


def max_scaled(alpha, phi: AlteringDistance) -> PairControl:
    """psi(t1, t2) = phi(alpha * max(t1, t2)) with 0 < alpha."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    return PairControl(
        "max_alpha_phi", (alpha, phi), fn=lambda t1, t2: phi(alpha * max(t1, t2))
    )


def sum_capped(scale, threshold, fallback) -> PairControl:
    """psi = (t1+t2)*scale when both args <= threshold, else the fallback."""
    if not (scale > 0 and threshold > 0 and fallback > 0):
        raise ValueError("sum_scaled parameters must be positive")
    return PairControl(
        "sum_scaled",
        (scale, threshold, fallback),
        fn=lambda t1, t2: (t1 + t2) * scale
        if (t1 <= threshold and t2 <= threshold)
        else fallback,
    )


def evaluate_phi(f: AlteringDistance, t):
    return f(t)


def evaluate_psi(p: PairControl, t1, t2):
    return p(t1, t2)


# ---------------------------------------------------------------------------
# Registry for custom controls referenced by id.

_PHI_REGISTRY: dict[str, AlteringDistance] = {}
_PSI_REGISTRY: dict[str, PairControl] = {}


def register_phi(name: str, fn: Callable, strict: bool = True) -> AlteringDistance:
    """Register a pure evaluator as a named altering distance."""
    control = AlteringDistance("custom", (name,), fn=fn, strict=strict)
    _PHI_REGISTRY[name] = control
    return control


def register_psi(name: str, fn: Callable) -> PairControl:
    control = PairControl("custom", (name,), fn=fn)
    _PSI_REGISTRY[name] = control
    return control


def make_phi(kind: str, params=()) -> AlteringDistance:
    if kind == "linear":
        return linear(*params)
    if kind == "capped_linear":
        return capped_linear(*params)
    if kind == "power":
        return power(*params)
    if kind == "custom":
        (name,) = params
        if name not in _PHI_REGISTRY:
            raise KeyError(f"no altering distance registered under {name!r}")
        return _PHI_REGISTRY[name]
    raise ValueError(f"unknown altering-distance kind {kind!r}")


def make_psi(kind: str, params=()) -> PairControl:
    if kind == "max_alpha_phi":
        return max_scaled(*params)
    if kind == "sum_scaled":
        return sum_capped(*params)
    if kind == "custom":
        (name,) = params
        if name not in _PSI_REGISTRY:
            raise KeyError(f"no pair control registered under {name!r}")
        return _PSI_REGISTRY[name]
    raise ValueError(f"unknown pair-control kind {kind!r}")


# ---------------------------------------------------------------------------
# Grids and property verifiers.


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid: zero plus points on (floor, upper], log-spaced by default."""

    upper: float
    points: int = 512
    log_spaced: bool = True
    floor: float | None = None  # default upper * 1e-9

    def values(self) -> np.ndarray:
        if not (self.upper > 0 and self.points >= 2):
            raise ValueError("grid needs upper > 0 and at least 2 points")
        lo = self.floor if self.floor is not None else self.upper * 1e-9
        if self.log_spaced:
            pts = np.geomspace(lo, self.upper, self.points)
        else:
            pts = np.linspace(lo, self.upper, self.points)
        return np.concatenate(([0.0], pts))


@dataclass(frozen=True)
class AdfPropertyReport:
    """Sampled evidence that a map is a valid altering distance."""

    zero_at_zero: bool
    positive_on_positive: bool
    monotone_violations: tuple  # adjacent (t, t') with phi(t) > phi(t') + slack
    strictly_increasing: bool   # False when a plateau was seen (non-decreasing only)
    continuity_moduli: tuple    # (h, max |phi(t+h) - phi(t)| over the grid)

    @property
    def ok(self) -> bool:
        return self.zero_at_zero and self.positive_on_positive and not self.monotone_violations


def verify_adf_properties(f: AlteringDistance, grid: GridSpec) -> AdfPropertyReport:
    ts = grid.values()
    vals = [f(float(t)) for t in ts]

    zero_at_zero = vals[0] == 0
    positive = all(v > 0 for v in vals[1:])

    violations = []
    plateau = False
    for (t0, v0), (t1, v1) in zip(zip(ts, vals), zip(ts[1:], vals[1:])):
        if v0 > v1 + MONOTONE_SLACK:
            violations.append((float(t0), float(t1)))
        elif abs(v1 - v0) <= PLATEAU_EPS and t1 > t0:
            plateau = True

    h0 = float(grid.upper) / grid.points
    moduli = []
    for h in (h0, h0 / 4, h0 / 16, h0 / 64):
        jump = max(abs(f(float(t) + h) - v) for t, v in zip(ts, vals))
        moduli.append((h, float(jump)))

    return AdfPropertyReport(
        zero_at_zero=bool(zero_at_zero),
        positive_on_positive=bool(positive),
        monotone_violations=tuple(violations),
        strictly_increasing=not plateau,
        continuity_moduli=tuple(moduli),
    )


@dataclass(frozen=True)
class DominanceReport:
    """Grid check of psi(t1,t2) < phi(t1) or phi(t2) whenever either is > 0."""

    pairs_checked: int
    violations: tuple  # (t1, t2) pairs

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_psi_dominance(bundle: ControlBundle, grid: GridSpec) -> DominanceReport:
    ts = grid.values()
    phi_vals = [bundle.phi(float(t)) for t in ts]
    checked = 0
    violations = []
    for i, t1 in enumerate(ts):
        for j, t2 in enumerate(ts):
            if i == 0 and j == 0:
                # psi(0,0) = 0 is a separate equality, not a dominance case.
                continue
            checked += 1
            psi = bundle.psi(float(t1), float(t2))
            if not (psi < phi_vals[i] or psi < phi_vals[j]):
                violations.append((float(t1), float(t2)))
    return DominanceReport(pairs_checked=checked, violations=tuple(violations))


@dataclass(frozen=True)
class UpperBoundReport:
    """Both readings of the weaker bound psi(t1,t2) <= phi(t_k).

    Either argument of psi can plausibly carry the bound, so the two
    readings are checked and reported separately.
    """

    first_arg_ok: bool
    second_arg_ok: bool
    first_arg_violations: int
    second_arg_violations: int


def verify_psi_upper_bounds(bundle: ControlBundle, grid: GridSpec) -> UpperBoundReport:
    ts = grid.values()
    phi_vals = [bundle.phi(float(t)) for t in ts]
    bad1 = 0
    bad2 = 0
    for i, t1 in enumerate(ts):
        for j, t2 in enumerate(ts):
            psi = bundle.psi(float(t1), float(t2))
            if psi > phi_vals[i]:
                bad1 += 1
            if psi > phi_vals[j]:
                bad2 += 1
    return UpperBoundReport(
        first_arg_ok=bad1 == 0,
        second_arg_ok=bad2 == 0,
        first_arg_violations=bad1,
        second_arg_violations=bad2,
    )
