#!/usr/bin/env python3
"""Tour of the spectral toolkit: decomposition, norms, definiteness.

Everything downstream (condition checkers, the solver's residuals) is built
on these few primitives, so this is the right place to start reading.
"""

import numpy as np

from matpair import (
    ComplexMatrix,
    HermitianMatrix,
    apply_spectral_function,
    hermitian_eigendecomposition,
    is_positive_definite,
    is_positive_semidefinite,
    singular_values,
    trace_norm,
)


def main():
    # A Hermitian matrix with a known spectrum: eigenvalues 3 and 1.
    h = HermitianMatrix(np.array([[2.0, 1.0], [1.0, 2.0]]))
    dec = hermitian_eigendecomposition(h)
    print("matrix:\n", h.entries.real)
    print("eigenvalues (descending):", dec.eigenvalues)
    print("reconstruction error:", np.max(np.abs(dec.reconstruct() - h.entries)))

    # Tiny anti-Hermitian noise is symmetrized away; gross asymmetry is not.
    noisy = np.array([[1.0, 0.5 + 1e-15j], [0.5, 2.0]])
    wrapped = HermitianMatrix(noisy)
    print("\nhermiticity defect absorbed:", wrapped.hermiticity_defect)

    # Singular values and the trace norm, on a non-Hermitian matrix.
    rng = np.random.default_rng(0)
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    s = singular_values(ComplexMatrix(g))
    print("\nsingular values:", np.round(s, 6))
    print("trace norm:", trace_norm(ComplexMatrix(g)))

    # Definiteness predicates use an eigenvalue-scaled tolerance.
    gram = HermitianMatrix(g.conj().T @ g)
    print("\nGram matrix PSD:", is_positive_semidefinite(gram))
    shifted = HermitianMatrix(gram.entries + 0.1 * np.eye(3))
    print("shifted Gram PD:", is_positive_definite(shifted))

    # Spectral functions act on eigenvalues and keep the eigenvectors.
    root = apply_spectral_function(shifted, np.sqrt)
    print(
        "sqrt check ||R@R - A||:",
        np.max(np.abs(root.entries @ root.entries - shifted.entries)),
    )


if __name__ == "__main__":
    main()
