"""Common positive-definite solutions to pairs of nonlinear matrix equations.

The package splits into a spectral toolkit (`spectra`), scalar control
functions (`controls`), a generic alternating fixed-point engine (`fixpoint`),
an exact sequence-space fixture (`linf_model`), and the matrix-equation layer
(`mateq`) that ties them together.  `presets` ships ready-made problem
configurations and `cli` exposes the verify/solve commands.
"""

__version__ = "0.1.0"

from .controls import (
    AlteringDistance,
    ControlBundle,
    GridSpec,
    PairControl,
    capped_linear,
    linear,
    make_phi,
    make_psi,
    max_scaled,
    power,
    sum_capped,
    verify_adf_properties,
    verify_psi_dominance,
)
from .fixpoint import (
    DomainSampler,
    InequalityCertificate,
    IterationTrace,
    NormedPointAdapter,
    Verdict,
    alternate_iterate,
    certify_contractive_inequality,
    gap_monotonicity_check,
    uniqueness_probe,
)
from .mateq import (
    EquationPair,
    EquationSpec,
    MapDescriptor,
    SolveReport,
    certify_derived_inequality,
    check_all_conditions,
    check_condition_i,
    check_condition_ii,
    check_condition_iii,
    compute_k,
    derived_bundle,
    induced_map,
    residual,
    sample_hermitian_in_ball,
    solve_common,
)
from .presets import load_preset, preset_names, preset_path
from .spectra import (
    ComplexMatrix,
    EigenConvergenceError,
    HermitianMatrix,
    NonFiniteMatrixError,
    SpectralDecomposition,
    apply_spectral_function,
    hermitian_eigendecomposition,
    is_positive_definite,
    is_positive_semidefinite,
    singular_values,
    trace_norm,
)

__all__ = [
    "__version__",
    # spectra
    "ComplexMatrix",
    "HermitianMatrix",
    "SpectralDecomposition",
    "NonFiniteMatrixError",
    "EigenConvergenceError",
    "hermitian_eigendecomposition",
    "apply_spectral_function",
    "singular_values",
    "trace_norm",
    "is_positive_semidefinite",
    "is_positive_definite",
    # controls
    "AlteringDistance",
    "PairControl",
    "ControlBundle",
    "GridSpec",
    "linear",
    "capped_linear",
    "power",
    "max_scaled",
    "sum_capped",
    "make_phi",
    "make_psi",
    "verify_adf_properties",
    "verify_psi_dominance",
    # fixpoint
    "Verdict",
    "NormedPointAdapter",
    "IterationTrace",
    "alternate_iterate",
    "DomainSampler",
    "InequalityCertificate",
    "certify_contractive_inequality",
    "gap_monotonicity_check",
    "uniqueness_probe",
    # mateq
    "MapDescriptor",
    "EquationSpec",
    "EquationPair",
    "induced_map",
    "residual",
    "compute_k",
    "sample_hermitian_in_ball",
    "check_condition_i",
    "check_condition_ii",
    "check_condition_iii",
    "check_all_conditions",
    "derived_bundle",
    "certify_derived_inequality",
    "SolveReport",
    "solve_common",
    # presets
    "preset_names",
    "preset_path",
    "load_preset",
]
