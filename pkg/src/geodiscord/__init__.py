"""Geometric discord and its two-sided global extension for two-qubit states.

Closed forms for X states, a Dakic-style closed form and a sphere optimizer
for arbitrary states, brute-force grid searches as independent oracles, and
the example families the measures are usually plotted on.
"""

from ._sphere import OptimizerConfig, OptimizerDidNotConverge
from .core import (
    AXIS_X,
    AXIS_Y,
    AXIS_Z,
    BlochForm,
    DensityMatrix4,
    DensityValidationError,
    ImaginaryResidue,
    MeasurementAxis,
    NonFinite,
    NotHermitian,
    NotPSD,
    ReconstructionNotPSD,
    TraceNotOne,
    apply_measurement,
    bloch_decompose,
    maximally_mixed,
    purity,
    reconstruct,
    validate_density,
)
from .measures import (
    Case,
    ComplexInput,
    MeasureResult,
    Method,
    XCase,
    XStateParams,
    classify_x_case,
    gap_x,
    gd_dakic,
    gd_x,
    ggqd_general,
    ggqd_matrix_form,
    ggqd_x,
    sym3_eigmax,
)
from .oracle import (
    REFERENCE_GRID,
    GridSpec,
    gd_bruteforce,
    ggqd_bruteforce,
    tqc_sequential,
)
from .states import (
    DomainError,
    PhaseNormalization,
    ReservoirAmplitudes,
    TCAmplitudes,
    as_x_params,
    example1,
    example2,
    example3,
    example4,
    example5,
    example_reference,
    normalize_x_phases,
    random_density,
    random_x_params,
    reservoir_amplitudes,
    tc_amplitudes,
    x_state,
)

__version__ = "0.1.0"

__all__ = [
    "AXIS_X",
    "AXIS_Y",
    "AXIS_Z",
    "BlochForm",
    "Case",
    "ComplexInput",
    "DensityMatrix4",
    "DensityValidationError",
    "DomainError",
    "GridSpec",
    "ImaginaryResidue",
    "MeasureResult",
    "MeasurementAxis",
    "Method",
    "NonFinite",
    "NotHermitian",
    "NotPSD",
    "OptimizerConfig",
    "OptimizerDidNotConverge",
    "PhaseNormalization",
    "REFERENCE_GRID",
    "ReconstructionNotPSD",
    "ReservoirAmplitudes",
    "TCAmplitudes",
    "TraceNotOne",
    "XCase",
    "XStateParams",
    "apply_measurement",
    "as_x_params",
    "bloch_decompose",
    "classify_x_case",
    "example1",
    "example2",
    "example3",
    "example4",
    "example5",
    "example_reference",
    "gap_x",
    "gd_bruteforce",
    "gd_dakic",
    "gd_x",
    "ggqd_bruteforce",
    "ggqd_general",
    "ggqd_matrix_form",
    "ggqd_x",
    "maximally_mixed",
    "normalize_x_phases",
    "purity",
    "random_density",
    "random_x_params",
    "reconstruct",
    "reservoir_amplitudes",
    "sym3_eigmax",
    "tc_amplitudes",
    "tqc_sequential",
    "validate_density",
    "x_state",
    "__version__",
]
