"""Independent reference routes used only by the test suite.

Eigenvalues here come from the characteristic polynomial (Faddeev-LeVerrier
recurrence) fed to numpy's companion-matrix root finder.  That shares no code
with the rotation-based decomposition under test.  Polynomial root finding is
the weaker algorithm numerically, so comparisons stay at small dimension and
loose tolerance.
"""

import numpy as np


def charpoly_coefficients(a: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda*I - A), highest degree first.

    Faddeev-LeVerrier: M_0 = 0, c_n = 1, then for k = 1..n
        M_k = A M_{k-1} + c_{n-k+1} I
        c_{n-k} = -tr(A M_k) / k
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    eye = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def eigenvalues_via_charpoly(a: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, descending."""
    roots = np.roots(charpoly_coefficients(a))
    return np.sort(roots.real)[::-1]


def singular_values_reference(a: np.ndarray) -> np.ndarray:
    return np.linalg.svd(np.asarray(a, dtype=np.complex128), compute_uv=False)


def trace_norm_reference(a: np.ndarray) -> float:
    return float(np.sum(singular_values_reference(a)))


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (g + g.conj().T) / 2.0
