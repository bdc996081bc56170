"""Pairs of nonlinear matrix equations X = Q +/- sum_i Ai* F(X) Ai.

An EquationSpec holds one equation (positive-definite constant Q, sign,
coefficients Ai, and a spectral map descriptor for F); an EquationPair holds
two equations sharing the same coefficient list.  The pair induces two
self-maps of the Hermitian trace-norm ball,

    f(X) = Q1 + sign1 * sum Ai* F(X) Ai,
    g(X) = Q2 + sign2 * sum Ai* G(X) Ai,

and a common solution is a common fixed point of f and g, found by the
alternating engine in `fixpoint`.

The three solvability conditions checked here are sufficient conditions for
existence/uniqueness of a common positive-definite solution.  Conditions
(ii) and (iii) quantify over the whole ball, so their checkers are sampled
evidence with a pinned seed, never proofs; every report says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .controls import ControlBundle, linear, max_scaled
from .fixpoint import (
    DomainSampler,
    InequalityCertificate,
    IterationTrace,
    NormedPointAdapter,
    alternate_iterate,
    certify_contractive_inequality,
)
from .spectra import (
    DEFINITENESS_TOL,
    ComplexMatrix,
    HermitianMatrix,
    NonFiniteMatrixError,
    apply_spectral_function,
    hermitian_eigendecomposition,
    is_positive_definite,
    is_positive_semidefinite,
    singular_values,
    trace_norm,
)

DEFAULT_SOLVE_TOL = 1e-10
DEFAULT_MAX_ITER = 10000
DEFAULT_ALPHA = 1e-6
DEFAULT_SAMPLES = 100

MAP_KINDS = ("zero", "scaled_identity", "spectral_power", "spectral_tanh", "affine")
_PARAM_COUNT = {"zero": 0, "scaled_identity": 1, "spectral_power": 2,
                "spectral_tanh": 1, "affine": 2}


@dataclass(frozen=True)
class MapDescriptor:
    """Spectral map X -> F(X) plus a certified singular-value bound.

    declared_k1 bounds every singular value of F(X) over the trace-norm ball
    of radius ball_radius; it is part of the data because the solvability
    conditions consume it.  Soundness can be spot-checked with
    spot_check_k1.
    """

    kind: str
    params: tuple = ()
    declared_k1: float = 0.0
    ball_radius: float = 1.0

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")
        if len(self.params) != _PARAM_COUNT[self.kind]:
            raise ValueError(
                f"map kind {self.kind!r} takes {_PARAM_COUNT[self.kind]} parameters, "
                f"got {len(self.params)}"
            )
        if self.kind == "spectral_power" and not self.params[1] > 0:
            raise ValueError("spectral_power exponent must be positive")
        if not self.declared_k1 >= 0:
            raise ValueError("declared_k1 must be >= 0")
        if not self.ball_radius > 0:
            raise ValueError("ball_radius must be positive")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    def scalar_map(self) -> Callable[[float], float]:
        if self.kind == "zero":
            return lambda lam: 0.0
        if self.kind == "scaled_identity":
            c = self.params[0]
            return lambda lam: c * lam
        if self.kind == "spectral_power":
            c, p = self.params
            return lambda lam: c * max(lam, 0.0) ** p
        if self.kind == "spectral_tanh":
            c = self.params[0]
            return lambda lam: c * math.tanh(lam)
        c, d = self.params
        return lambda lam: c * lam + d

    def apply(self, x: HermitianMatrix) -> HermitianMatrix:
        return apply_spectral_function(x, self.scalar_map())


def auto_k1(kind: str, params, ball_radius: float) -> float | None:
    """Closed-form singular-value bound over the ball, where one exists.

    zero -> 0; scaled_identity(c) -> |c|*a; spectral_tanh(c) -> |c|;
    affine(c, d) -> |c|*a + |d|.  Returns None for kinds (spectral_power)
    that need an explicit bound.
    """
    if kind == "zero":
        return 0.0
    if kind == "scaled_identity":
        return abs(float(params[0])) * ball_radius
    if kind == "spectral_tanh":
        return abs(float(params[0]))
    if kind == "affine":
        return abs(float(params[0])) * ball_radius + abs(float(params[1]))
    return None


@dataclass(frozen=True, eq=False)
class EquationSpec:
    """One equation X = Q + sign * sum Ai* F(X) Ai with Q positive definite."""

    q: HermitianMatrix
    sign: str  # "plus" | "minus"
    coefficients: tuple
    nonlinearity: MapDescriptor

    def __post_init__(self):
        if self.sign not in ("plus", "minus"):
            raise ValueError(f"sign must be 'plus' or 'minus', got {self.sign!r}")
        if not isinstance(self.q, HermitianMatrix):
            object.__setattr__(self, "q", HermitianMatrix(self.q))
        if not is_positive_definite(self.q):
            raise ValueError("constant term Q must be positive definite")
        coeffs = tuple(
            a if isinstance(a, ComplexMatrix) else ComplexMatrix(a)
            for a in self.coefficients
        )
        if not coeffs:
            raise ValueError("at least one coefficient matrix is required")
        for a in coeffs:
            if a.dim != self.q.dim:
                raise ValueError(
                    f"coefficient dimension {a.dim} does not match Q dimension {self.q.dim}"
                )
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def dim(self) -> int:
        return self.q.dim

    @property
    def sign_value(self) -> int:
        return 1 if self.sign == "plus" else -1


@dataclass(frozen=True, eq=False)
class EquationPair:
    """Two equations over the same coefficient list and dimension."""

    first: EquationSpec
    second: EquationSpec

    def __post_init__(self):
        if self.first.dim != self.second.dim:
            raise ValueError("equations have different dimensions")
        a1, a2 = self.first.coefficients, self.second.coefficients
        if len(a1) != len(a2) or any(
            not np.array_equal(x.entries, y.entries) for x, y in zip(a1, a2)
        ):
            raise ValueError("equations must share an identical coefficient list")

    @property
    def dim(self) -> int:
        return self.first.dim

    @property
    def coefficients(self) -> tuple:
        return self.first.coefficients


def coefficient_transform(spec: EquationSpec, x: HermitianMatrix) -> HermitianMatrix:
    """S(X) = sum Ai* F(X) Ai, symmetrized."""
    if x.dim != spec.dim:
        raise ValueError(f"dimension mismatch: point {x.dim}, equation {spec.dim}")
    fx = spec.nonlinearity.apply(x).entries
    total = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    for a in spec.coefficients:
        total += a.entries.conj().T @ fx @ a.entries
    return HermitianMatrix((total + total.conj().T) / 2.0)


def induced_map(spec: EquationSpec) -> Callable[[HermitianMatrix], HermitianMatrix]:
    """The self-map X -> Q + sign * S(X) the equation induces."""

    def apply(x: HermitianMatrix) -> HermitianMatrix:
        s = coefficient_transform(spec, x)
        return HermitianMatrix(spec.q.entries + spec.sign_value * s.entries)

    return apply


def residual(spec: EquationSpec, x: HermitianMatrix) -> float:
    """Trace-norm residual ||X - Q - sign * S(X)||."""
    return trace_norm(x.entries - induced_map(spec)(x).entries)


def compute_k(pair: EquationPair) -> float:
    """k = sum_i ||Ai*|| * ||Ai|| in the trace norm."""
    total = 0.0
    for a in pair.coefficients:
        total += trace_norm(a.entries.conj().T) * trace_norm(a.entries)
    return total


def trace_norm_adapter() -> NormedPointAdapter:
    return NormedPointAdapter(
        distance=lambda x, y: trace_norm(x.entries - y.entries),
        eq_tol=1e-12,
        is_finite=lambda x: bool(np.all(np.isfinite(x.entries))),
    )


def sample_hermitian_in_ball(
    n: int, radius: float, rng: np.random.Generator
) -> HermitianMatrix:
    """Symmetrized complex Gaussian scaled to trace norm u * radius, u in (0, 1]."""
    while True:
        raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (raw + raw.conj().T) / 2.0
        t = trace_norm(h)
        if t > 0:
            break
    u = 1.0 - rng.uniform()
    return HermitianMatrix(h * (u * radius / t))


# ---------------------------------------------------------------------------
# Solvability condition checkers.


@dataclass(frozen=True)
class ConditionIReport:
    """Norm budget ||Q1||, ||Q2|| <= a - k*k1*n; margins are budget - norm."""

    k: float
    k1: float
    ball_radius: float
    dim: int
    norm_q1: float
    norm_q2: float
    margin_q1: float
    margin_q2: float
    passed: bool


def check_condition_i(pair: EquationPair, ball_radius: float, k1: float) -> ConditionIReport:
    if not ball_radius > 0:
        raise ValueError("ball_radius must be positive")
    if not k1 >= 0:
        raise ValueError("k1 must be >= 0")
    k = compute_k(pair)
    n = pair.dim
    budget = ball_radius - k * k1 * n
    nq1 = trace_norm(pair.first.q.entries)
    nq2 = trace_norm(pair.second.q.entries)
    m1 = budget - nq1
    m2 = budget - nq2
    return ConditionIReport(
        k=k,
        k1=k1,
        ball_radius=ball_radius,
        dim=n,
        norm_q1=nq1,
        norm_q2=nq2,
        margin_q1=m1,
        margin_q2=m2,
        passed=bool(m1 >= 0 and m2 >= 0),
    )


def condition_ii_branch_margins(
    pair: EquationPair, x: HermitianMatrix, tol: float = DEFINITENESS_TOL
):
    """Per-equation definiteness margins at one sample X.

    For a plus equation the branch requires S(X) >= 0; for a minus equation,
    Q - S(X) > 0.  Each entry is (passed, margin, min_eigenvalue) where the
    margin is the distance to the failure boundary of the tolerance-aware
    check (nonnegative exactly when the branch passes), and min_eigenvalue
    is the raw smallest eigenvalue of the tested matrix.
    """
    out = []
    for spec in (pair.first, pair.second):
        s = coefficient_transform(spec, x)
        if spec.sign == "plus":
            tested = s
            w = hermitian_eigendecomposition(tested).eigenvalues
            threshold = max(tol * max(1.0, float(w[0])), 1e-14)
            margin = float(w[-1]) + threshold
            ok = is_positive_semidefinite(tested, tol)
        else:
            tested = HermitianMatrix(spec.q.entries - s.entries)
            w = hermitian_eigendecomposition(tested).eigenvalues
            radius = max(abs(float(w[0])), abs(float(w[-1])))
            margin = float(w[-1]) - max(tol * max(1.0, radius), 1e-14)
            ok = is_positive_definite(tested, tol)
        out.append((ok, margin, float(w[-1])))
    return tuple(out)


@dataclass(frozen=True)
class ConditionIIReport:
    """Either/or definiteness over sampled ball points.

    Per sample the condition holds when at least one equation's branch does;
    min_margin is the worst best-branch margin, min_eigenvalue the rawest
    eigenvalue seen on passing branches.  Sampled evidence, not a proof.
    """

    passed: bool
    min_margin: float
    min_eigenvalue: float
    samples_used: int
    seed: int
    branch_first_uniform: bool
    branch_second_uniform: bool
    violations: tuple  # (sample index, best-branch margin)
    sampled_evidence_only: bool = True


def check_condition_ii(
    pair: EquationPair,
    ball_radius: float,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tol: float = DEFINITENESS_TOL,
) -> ConditionIIReport:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = pair.dim
    uniform = [True, True]
    min_margin = math.inf
    min_eig = math.inf
    violations = []
    for idx in range(samples):
        x = sample_hermitian_in_ball(n, ball_radius, rng)
        branches = condition_ii_branch_margins(pair, x, tol)
        for b, (ok, _, _) in enumerate(branches):
            if not ok:
                uniform[b] = False
        best = max(b for _, b, _ in branches)
        min_margin = min(min_margin, best)
        passing_eigs = [e for ok, _, e in branches if ok]
        if passing_eigs:
            min_eig = min(min_eig, max(passing_eigs))
        if not any(ok for ok, _, _ in branches):
            violations.append((idx, best))
    return ConditionIIReport(
        passed=not violations,
        min_margin=min_margin,
        min_eigenvalue=min_eig,
        samples_used=samples,
        seed=seed,
        branch_first_uniform=uniform[0],
        branch_second_uniform=uniform[1],
        violations=tuple(violations),
    )


def condition_iii_margin(
    pair: EquationPair,
    k1: float,
    alpha: float,
    x: HermitianMatrix,
    y: HermitianMatrix,
) -> float:
    """Margin rhs - lhs of the spectral-gap condition at one sampled pair.

    lhs = 2*k*k1 + max singular value of Q1 - Q2.  rhs couples each
    equation's transform against lambda+(X - sign*Q), scaled by 1/(n+1),
    minus alpha * lambda+(X - Y); lambda+ is the trace norm.
    """
    k = compute_k(pair)
    n = pair.dim
    dq = pair.first.q.entries - pair.second.q.entries
    lhs = 2.0 * k * k1 + float(singular_values(dq)[0])
    terms = []
    for spec, point in ((pair.first, x), (pair.second, y)):
        s = coefficient_transform(spec, point)
        shifted = point.entries - spec.sign_value * spec.q.entries
        terms.append(abs(trace_norm(s.entries) - trace_norm(shifted)))
    rhs = max(terms) / (n + 1) - alpha * trace_norm(x.entries - y.entries)
    return rhs - lhs


@dataclass(frozen=True)
class ConditionIIIReport:
    """Sampled margins of the spectral-gap condition; evidence, not proof."""

    passed: bool
    lhs: float
    alpha: float
    k: float
    k1: float
    worst_margin: float
    samples_used: int
    seed: int
    violations: tuple  # (sample index, margin)
    sampled_evidence_only: bool = True


def check_condition_iii(
    pair: EquationPair,
    ball_radius: float,
    k1: float,
    alpha: float,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ConditionIIIReport:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    k = compute_k(pair)
    dq = pair.first.q.entries - pair.second.q.entries
    lhs = 2.0 * k * k1 + float(singular_values(dq)[0])
    rng = np.random.default_rng(seed)
    n = pair.dim
    worst = math.inf
    violations = []
    for idx in range(samples):
        x = sample_hermitian_in_ball(n, ball_radius, rng)
        y = sample_hermitian_in_ball(n, ball_radius, rng)
        margin = condition_iii_margin(pair, k1, alpha, x, y)
        worst = min(worst, margin)
        if margin < 0:
            violations.append((idx, margin))
    return ConditionIIIReport(
        passed=not violations,
        lhs=lhs,
        alpha=alpha,
        k=k,
        k1=k1,
        worst_margin=worst,
        samples_used=samples,
        seed=seed,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class ConditionReport:
    """Aggregate of the three solvability checks for one pair."""

    k: float
    k1: float
    ball_radius: float
    alpha: float
    condition_i: ConditionIReport
    condition_ii: ConditionIIReport
    condition_iii: ConditionIIIReport
    samples_used: int
    seed: int
    sampled_evidence_only: bool = True

    @property
    def all_passed(self) -> bool:
        return (
            self.condition_i.passed
            and self.condition_ii.passed
            and self.condition_iii.passed
        )


def check_all_conditions(
    pair: EquationPair,
    ball_radius: float,
    k1: float,
    alpha: float = DEFAULT_ALPHA,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ConditionReport:
    rep_i = check_condition_i(pair, ball_radius, k1)
    rep_ii = check_condition_ii(pair, ball_radius, samples, seed)
    rep_iii = check_condition_iii(pair, ball_radius, k1, alpha, samples, seed)
    return ConditionReport(
        k=rep_i.k,
        k1=k1,
        ball_radius=ball_radius,
        alpha=alpha,
        condition_i=rep_i,
        condition_ii=rep_ii,
        condition_iii=rep_iii,
        samples_used=samples,
        seed=seed,
    )


def derived_bundle(dim: int, alpha: float) -> ControlBundle:
    """Controls under which the pair's induced maps satisfy the contractive
    inequality whenever the solvability conditions hold: identity phi,
    phi1(t) = n*alpha*t, psi(t1,t2) = (n/(n+1)) * max(t1,t2)."""
    phi = linear(1.0)
    return ControlBundle(
        phi=phi, phi1=linear(dim * alpha), psi=max_scaled(dim / (dim + 1), phi)
    )


def certify_derived_inequality(
    pair: EquationPair,
    ball_radius: float,
    alpha: float = DEFAULT_ALPHA,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> InequalityCertificate:
    """Sample the contractive inequality for the induced maps over the ball.

    Uses the same seeded pair stream as check_condition_iii, so a violating
    sample index there refers to the same (X, Y) pair here.
    """
    n = pair.dim
    f = induced_map(pair.first)
    g = induced_map(pair.second)
    sampler = DomainSampler.random(
        lambda rng: sample_hermitian_in_ball(n, ball_radius, rng)
    )
    return certify_contractive_inequality(
        f,
        g,
        derived_bundle(n, alpha),
        sampler,
        trace_norm_adapter(),
        pairs=samples,
        seed=seed,
    )


def spot_check_k1(
    descriptor: MapDescriptor, dim: int, samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> float:
    """Max singular value of F(X) over sampled X in the declared ball."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = sample_hermitian_in_ball(dim, descriptor.ball_radius, rng)
        worst = max(worst, float(singular_values(descriptor.apply(x).entries)[0]))
    return worst


# ---------------------------------------------------------------------------
# Solver.


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Outcome of the alternating solve, with definiteness and ball checks."""

    trace: IterationTrace
    solution: HermitianMatrix | None
    residual_1: float
    residual_2: float
    min_eigenvalue: float
    within_ball: bool
    ball_radius: float
    tol: float

    @property
    def converged(self) -> bool:
        return self.solution is not None

    @property
    def iterations(self) -> int:
        return self.trace.steps


def solve_common(
    pair: EquationPair,
    ball_radius: float,
    tol: float = DEFAULT_SOLVE_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    x0: HermitianMatrix | None = None,
) -> SolveReport:
    """Alternate the two induced maps from x0 (default Q1) until both
    residuals drop below tol.  Non-convergence is reported, not raised."""
    start = pair.first.q if x0 is None else x0
    if start.dim != pair.dim:
        raise ValueError(f"start dimension {start.dim} does not match pair {pair.dim}")
    f = induced_map(pair.first)
    g = induced_map(pair.second)
    trace = alternate_iterate(f, g, start, trace_norm_adapter(), tol, max_iter)
    final = trace.final
    # the engine's residuals at the final iterate are exactly the two
    # equation residuals, already guarded against overflow
    r1 = float(trace.residual_f)
    r2 = float(trace.residual_g)
    try:
        w = hermitian_eigendecomposition(final).eigenvalues
        min_eig = float(w[-1])
        in_ball = bool(trace_norm(final.entries) <= ball_radius)
    except NonFiniteMatrixError:
        # final iterate too large for the diagnostics; only possible on
        # non-converged runs
        min_eig = math.nan
        in_ball = False
    return SolveReport(
        trace=trace,
        solution=final if trace.converged else None,
        residual_1=r1,
        residual_2=r2,
        min_eigenvalue=min_eig,
        within_ball=in_ball,
        ball_radius=ball_radius,
        tol=tol,
    )
