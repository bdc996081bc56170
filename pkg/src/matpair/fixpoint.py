"""Alternating fixed-point engine for a pair of self-maps.

The iteration runs x1 = f(x0), x2 = g(x1), x3 = f(x2), ... : odd-index
iterates come from f, even-index ones from g.  A run is declared converged
only when the latest gap and both residuals d(z, f(z)), d(z, g(z)) are at or
below the tolerance; no continuity of f or g is assumed anywhere, the claim
rests purely on those final residuals.

Points are opaque: a NormedPointAdapter supplies the metric, so the same
engine drives float demos, Hermitian-matrix iterations and exact
Fraction-valued sequence spaces.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .spectra import NonFiniteMatrixError

GAP_MONOTONE_SLACK = 1e-12


class Verdict(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    DIVERGED_NONFINITE = "diverged_nonfinite"


@dataclass(frozen=True)
class NormedPointAdapter:
    """Metric plus point-equality tolerance for an otherwise opaque space."""

    distance: Callable[[Any, Any], Any]
    eq_tol: Any = 0
    is_finite: Callable[[Any], bool] | None = None

    def points_equal(self, x, y) -> bool:
        return self.distance(x, y) <= self.eq_tol


def absolute_value_adapter(eq_tol: float = 1e-12) -> NormedPointAdapter:
    """Adapter for plain real numbers."""
    return NormedPointAdapter(
        distance=lambda x, y: abs(x - y),
        eq_tol=eq_tol,
        is_finite=lambda x: math.isfinite(x),
    )


def _value_finite(v) -> bool:
    if isinstance(v, Fraction):
        return True
    try:
        return math.isfinite(float(v))
    except (OverflowError, ValueError):
        return False


@dataclass(frozen=True, eq=False)
class IterationTrace:
    """Iterates x0..xN, gaps s_n = d(x_n, x_{n+1}), final residuals, verdict."""

    iterates: tuple
    gaps: tuple
    residual_f: Any
    residual_g: Any
    verdict: Verdict
    failed_index: int | None = None  # first non-finite iterate, if any

    @property
    def final(self):
        return self.iterates[-1]

    @property
    def converged(self) -> bool:
        return self.verdict is Verdict.CONVERGED

    @property
    def steps(self) -> int:
        return len(self.iterates) - 1


def alternate_iterate(
    f: Callable,
    g: Callable,
    x0,
    adapter: NormedPointAdapter,
    tol,
    max_iter: int = 10000,
) -> IterationTrace:
    """Run the alternating iteration until gap and both residuals are <= tol.

    tol must be positive (a Fraction works for exact spaces); max_iter bounds
    the number of map applications.  A non-finite point or gap stops the run
    with verdict diverged_nonfinite and the offending index.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if not (isinstance(max_iter, int) and max_iter >= 2):
        raise ValueError(f"max_iter must be an int >= 2, got {max_iter!r}")

    def bad(point) -> bool:
        return adapter.is_finite is not None and not adapter.is_finite(point)

    pts = [x0]
    gaps: list = []
    if bad(x0):
        return IterationTrace((x0,), (), math.inf, math.inf, Verdict.DIVERGED_NONFINITE, 0)

    verdict = Verdict.MAX_ITERATIONS
    failed = None
    res_f = res_g = None
    for _ in range(max_iter):
        idx = len(pts)  # index the next iterate will get
        step_map = f if idx % 2 == 1 else g
        try:
            nxt = step_map(pts[-1])
        except NonFiniteMatrixError:
            verdict, failed = Verdict.DIVERGED_NONFINITE, idx
            break
        if bad(nxt):
            verdict, failed = Verdict.DIVERGED_NONFINITE, idx
            break
        try:
            # distance itself can overflow on huge finite points (trace-norm
            # style metrics square their argument)
            gap = adapter.distance(pts[-1], nxt)
        except NonFiniteMatrixError:
            verdict, failed = Verdict.DIVERGED_NONFINITE, idx
            break
        if not _value_finite(gap):
            verdict, failed = Verdict.DIVERGED_NONFINITE, idx
            break
        pts.append(nxt)
        gaps.append(gap)
        if gap <= tol:
            try:
                res_f = adapter.distance(nxt, f(nxt))
                res_g = adapter.distance(nxt, g(nxt))
            except NonFiniteMatrixError:
                res_f = res_g = math.inf
                continue
            if res_f <= tol and res_g <= tol:
                verdict = Verdict.CONVERGED
                break

    if verdict is Verdict.DIVERGED_NONFINITE:
        res_f = res_g = math.inf
    elif verdict is Verdict.MAX_ITERATIONS or res_f is None:
        z = pts[-1]
        try:
            res_f = adapter.distance(z, f(z))
            res_g = adapter.distance(z, g(z))
        except NonFiniteMatrixError:
            res_f = res_g = math.inf

    return IterationTrace(
        iterates=tuple(pts),
        gaps=tuple(gaps),
        residual_f=res_f,
        residual_g=res_g,
        verdict=verdict,
        failed_index=failed,
    )


# ---------------------------------------------------------------------------
# Certificates.


@dataclass(frozen=True)
class DomainSampler:
    """Either a finite point set (checked exhaustively) or a seeded drawer."""

    draw: Callable[[np.random.Generator], Any] | None = None
    points: tuple | None = None

    @classmethod
    def finite(cls, points) -> "DomainSampler":
        pts = tuple(points)
        if not pts:
            raise ValueError("finite domain must contain at least one point")
        return cls(points=pts)

    @classmethod
    def random(cls, draw: Callable[[np.random.Generator], Any]) -> "DomainSampler":
        return cls(draw=draw)

    @property
    def is_exhaustive(self) -> bool:
        return self.points is not None


@dataclass(frozen=True, eq=False)
class PairViolation:
    index: int
    x: Any
    y: Any
    lhs: Any
    rhs: Any
    margin: Any


@dataclass(frozen=True, eq=False)
class InequalityCertificate:
    """Sampled (or exhaustive) margins of the contractive inequality

        phi(d(f(x), g(y))) <= psi(d(x, f(x)), d(y, g(y))) - phi1(d(x, y)).

    worst_margin = min over pairs of rhs - lhs; negative iff violations.
    Exhaustive certificates are proofs over the finite domain; sampled ones
    are evidence only.
    """

    pairs_checked: int
    worst_margin: Any
    violations: tuple
    exhaustive: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def certify_contractive_inequality(
    f: Callable,
    g: Callable,
    bundle,
    sampler: DomainSampler,
    adapter: NormedPointAdapter,
    pairs: int | None = None,
    seed: int = 0,
) -> InequalityCertificate:
    """Check the contractive inequality over ordered pairs of domain points.

    Finite domains are enumerated exhaustively (pairs is ignored); otherwise
    `pairs` seeded draws of (x, y) are taken.  Evaluation order is serial and
    deterministic; violations are sorted by (margin, index).
    """
    if sampler.is_exhaustive:
        pts = sampler.points
        candidates = ((x, y) for x in pts for y in pts)
        total = len(pts) ** 2
    else:
        if pairs is None or pairs < 1:
            raise ValueError("random sampling needs pairs >= 1")
        rng = np.random.default_rng(seed)
        candidates = ((sampler.draw(rng), sampler.draw(rng)) for _ in range(pairs))
        total = pairs

    worst = None
    violations = []
    for index, (x, y) in enumerate(candidates):
        fx = f(x)
        gy = g(y)
        lhs = bundle.phi(adapter.distance(fx, gy))
        rhs = bundle.psi(adapter.distance(x, fx), adapter.distance(y, gy)) - bundle.phi1(
            adapter.distance(x, y)
        )
        margin = rhs - lhs
        if worst is None or margin < worst:
            worst = margin
        if margin < 0:
            violations.append(PairViolation(index, x, y, lhs, rhs, margin))

    violations.sort(key=lambda v: (v.margin, v.index))
    return InequalityCertificate(
        pairs_checked=total,
        worst_margin=worst,
        violations=tuple(violations),
        exhaustive=sampler.is_exhaustive,
    )


@dataclass(frozen=True)
class GapReport:
    """Indices n where the gap sequence increased beyond the slack."""

    violations: tuple
    max_increase: Any

    @property
    def monotone(self) -> bool:
        return not self.violations


def gap_monotonicity_check(trace: IterationTrace) -> GapReport:
    """Check s_{n+1} <= s_n + slack along a trace with at least two gaps."""
    if len(trace.iterates) < 3:
        raise ValueError("gap monotonicity needs at least 3 iterates")
    violations = []
    max_inc = None
    for n in range(len(trace.gaps) - 1):
        inc = trace.gaps[n + 1] - trace.gaps[n]
        if max_inc is None or inc > max_inc:
            max_inc = inc
        if trace.gaps[n + 1] > trace.gaps[n] + GAP_MONOTONE_SLACK:
            violations.append(n)
    return GapReport(violations=tuple(violations), max_increase=max_inc)


@dataclass(frozen=True, eq=False)
class UniquenessReport:
    """Alternating runs from several starts, with pairwise limit distances."""

    traces: tuple
    pairwise_distances: tuple  # (i, j, distance) over converged runs
    flagged: tuple             # entries with distance > 10 * tol

    @property
    def all_converged(self) -> bool:
        return all(t.converged for t in self.traces)

    @property
    def consistent(self) -> bool:
        return self.all_converged and not self.flagged


def uniqueness_probe(
    f: Callable,
    g: Callable,
    starts,
    adapter: NormedPointAdapter,
    tol,
    max_iter: int = 10000,
) -> UniquenessReport:
    """Iterate from each start and flag limit pairs further than 10*tol apart."""
    traces = tuple(alternate_iterate(f, g, x0, adapter, tol, max_iter) for x0 in starts)
    dists = []
    flagged = []
    for i in range(len(traces)):
        for j in range(i + 1, len(traces)):
            if traces[i].converged and traces[j].converged:
                d = adapter.distance(traces[i].final, traces[j].final)
                dists.append((i, j, d))
                if d > 10 * tol:
                    flagged.append((i, j, d))
    return UniquenessReport(
        traces=traces, pairwise_distances=tuple(dists), flagged=tuple(flagged)
    )
