"""Dense complex-matrix kernel: Hermitian eigendecomposition, singular values,
trace norm, and definiteness tests.

Everything here targets small dense matrices (n up to a few dozen).  The
eigensolver is a cyclic Jacobi iteration on complex Hermitian matrices: slow
compared to LAPACK but self-contained, robust at this scale, and bit-for-bit
deterministic for identical input.  Singular values, the trace norm, spectral
function application and definiteness tests are all derived from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

# Constructor / check tolerances.
HERMITICITY_RTOL = 1e-12
DEFINITENESS_TOL = 1e-10   # default for is_positive_(semi)definite
DEFINITENESS_FLOOR = 1e-14  # absolute floor so tol=0 never tests exact zero

# Jacobi iteration controls.
JACOBI_SWEEP_CAP = 100
JACOBI_OFF_RTOL = 1e-13
RECONSTRUCTION_RTOL = 1e-10
UNITARITY_TOL = 1e-10


class NonFiniteMatrixError(ValueError):
    """Raised when matrix entries contain NaN or infinity."""


class EigenConvergenceError(np.linalg.LinAlgError):
    """Raised when the Jacobi sweep cap is hit or post-checks fail."""


def _coerce_square(entries) -> np.ndarray:
    a = np.array(entries, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteMatrixError("matrix entries must be finite")
    return a


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Square complex matrix with finite entries; storage is read-only."""

    entries: np.ndarray

    def __post_init__(self):
        a = _coerce_square(self.entries)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class HermitianMatrix(ComplexMatrix):
    """Hermitian matrix; the constructor symmetrizes small defects.

    The defect max |a_ij - conj(a_ji)| of the input is recorded; inputs whose
    defect exceeds HERMITICITY_RTOL * (1 + max |a_ij|) are rejected rather
    than silently symmetrized.
    """

    hermiticity_defect: float = field(init=False, default=0.0)

    def __post_init__(self):
        super().__post_init__()
        a = self.entries
        defect = float(np.max(np.abs(a - a.conj().T)))
        scale = 1.0 + float(np.max(np.abs(a)))
        if defect > HERMITICITY_RTOL * scale:
            raise ValueError(
                f"matrix is not Hermitian: defect {defect:.6e} exceeds "
                f"{HERMITICITY_RTOL * scale:.6e}"
            )
        sym = (a + a.conj().T) / 2.0
        sym.setflags(write=False)
        object.__setattr__(self, "entries", sym)
        object.__setattr__(self, "hermiticity_defect", defect)
        object.__setattr__(self, "_spectral", None)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (descending, real) and unitary eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def _as_array(a) -> np.ndarray:
    if isinstance(a, ComplexMatrix):
        return a.entries
    return _coerce_square(a)


def _offdiagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.linalg.norm(off))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero the (p, q) entry of Hermitian a in place with a unitary rotation.

    The rotation J is the identity outside rows/cols p, q with
    J[p,p]=J[q,q]=c, J[p,q]=s, J[q,p]=-conj(s); a <- J* a J and v <- v J.
    """
    beta = a[p, q]
    absb = abs(beta)
    alpha = a[p, p].real
    gamma = a[q, q].real
    # Smaller root of t^2 - 2*tau*t - 1 = 0 gives the (<= 45 degree) rotation.
    tau = (alpha - gamma) / (2.0 * absb)
    root = math.hypot(tau, 1.0)
    t = -1.0 / (tau + root) if tau >= 0.0 else 1.0 / (root - tau)
    c = 1.0 / math.sqrt(1.0 + t * t)
    sigma = t * c
    s = sigma * (beta / absb)

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - np.conj(s) * col_q
    a[:, q] = s * col_p + c * col_q
    a[p, :] = np.conj(a[:, p])
    a[q, :] = np.conj(a[:, q])
    a[p, p] = c * c * alpha - 2.0 * c * sigma * absb + sigma * sigma * gamma
    a[q, q] = sigma * sigma * alpha + 2.0 * c * sigma * absb + c * c * gamma
    a[p, q] = 0.0
    a[q, p] = 0.0

    vcol_p = v[:, p].copy()
    vcol_q = v[:, q].copy()
    v[:, p] = c * vcol_p - np.conj(s) * vcol_q
    v[:, q] = s * vcol_p + c * vcol_q


def hermitian_eigendecomposition(a) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Accepts a HermitianMatrix (result is cached on it) or anything a
    HermitianMatrix can be built from.  Eigenvalues are returned in
    descending order; ties keep the Jacobi output order (stable sort).
    Raises EigenConvergenceError if the sweep cap is exceeded or the
    reconstruction/unitarity post-checks fail.
    """
    mat = a if isinstance(a, HermitianMatrix) else HermitianMatrix(_as_array(a))
    cached = getattr(mat, "_spectral", None)
    if cached is not None:
        return cached

    work = np.array(mat.entries, dtype=np.complex128)
    n = work.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(mat.entries))
    threshold = JACOBI_OFF_RTOL * scale
    # Pivots this small cannot keep the off-diagonal norm above threshold.
    skip = threshold / (2.0 * n)

    sweeps = 0
    while _offdiagonal_norm(work) > threshold:
        if sweeps >= JACOBI_SWEEP_CAP:
            raise EigenConvergenceError(
                f"Jacobi iteration did not converge in {JACOBI_SWEEP_CAP} sweeps: "
                f"off-diagonal norm {_offdiagonal_norm(work):.6e} "
                f"(threshold {threshold:.6e}) for matrix\n{mat.entries!r}"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(work[p, q]) > skip:
                    _rotate(work, v, p, q)
        sweeps += 1

    w = np.real(np.diagonal(work)).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    w.setflags(write=False)
    v.setflags(write=False)
    dec = SpectralDecomposition(eigenvalues=w, eigenvectors=v)

    recon_err = float(np.linalg.norm(dec.reconstruct() - mat.entries))
    if recon_err > RECONSTRUCTION_RTOL * (1.0 + scale):
        raise EigenConvergenceError(
            f"eigendecomposition reconstruction residual {recon_err:.6e} too large "
            f"for matrix\n{mat.entries!r}"
        )
    unitarity = float(np.linalg.norm(v.conj().T @ v - np.eye(n)))
    if unitarity > UNITARITY_TOL:
        raise EigenConvergenceError(
            f"eigenvector unitarity residual {unitarity:.6e} too large "
            f"for matrix\n{mat.entries!r}"
        )

    object.__setattr__(mat, "_spectral", dec)
    return dec


def singular_values(a) -> np.ndarray:
    """Singular values (descending) via eigenvalues of A* A.

    Small negative eigenvalues of the Gram matrix are clamped to zero before
    the square root.
    """
    arr = _as_array(a)
    # squaring can overflow for finite input near sqrt(float max); the
    # wrapper below raises NonFiniteMatrixError then, so mute the warning
    with np.errstate(over="ignore", invalid="ignore"):
        gram = arr.conj().T @ arr
        gram = (gram + gram.conj().T) / 2.0
    w = hermitian_eigendecomposition(HermitianMatrix(gram)).eigenvalues
    return np.sqrt(np.clip(w, 0.0, None))


def trace_norm(a) -> float:
    """Sum of singular values (nuclear norm)."""
    return float(np.sum(singular_values(a)))


def _eigen_range(a) -> np.ndarray:
    mat = a if isinstance(a, HermitianMatrix) else HermitianMatrix(_as_array(a))
    return hermitian_eigendecomposition(mat).eigenvalues


def is_positive_semidefinite(a, tol: float = DEFINITENESS_TOL) -> bool:
    """True iff min eigenvalue >= -max(tol * max(1, lambda_max), floor)."""
    w = _eigen_range(a)
    threshold = max(tol * max(1.0, float(w[0])), DEFINITENESS_FLOOR)
    return float(w[-1]) >= -threshold


def is_positive_definite(a, tol: float = DEFINITENESS_TOL) -> bool:
    """True iff min eigenvalue > max(tol * max(1, spectral radius), floor)."""
    w = _eigen_range(a)
    radius = max(abs(float(w[0])), abs(float(w[-1])))
    threshold = max(tol * max(1.0, radius), DEFINITENESS_FLOOR)
    return float(w[-1]) > threshold


def apply_spectral_function(a, scalar_map: Callable[[float], float]) -> HermitianMatrix:
    """Apply a real scalar map to the eigenvalues of a Hermitian matrix.

    Returns U diag(m(lambda)) U* as a HermitianMatrix.  Raises ValueError if
    the map produces a non-finite value, naming the offending eigenvalue.
    """
    dec = hermitian_eigendecomposition(a)
    mapped = np.empty(dec.eigenvalues.shape[0], dtype=np.float64)
    for i, lam in enumerate(dec.eigenvalues):
        val = float(scalar_map(float(lam)))
        if not math.isfinite(val):
            raise ValueError(
                f"spectral map produced non-finite value {val!r} at eigenvalue {float(lam)!r}"
            )
        mapped[i] = val
    u = dec.eigenvectors
    out = (u * mapped) @ u.conj().T
    return HermitianMatrix(out)
