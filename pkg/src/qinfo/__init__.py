"""Small-system quantum information toolkit.

Entropy measures over density matrices (Shannon, von Neumann, the
basis-dependent informational entropy and the ensemble partial entropy),
Born-rule sampling and single-qubit tomography, amplitude-encoding
schemes with repeated-copy decoders, a classical noisy-averaging
analogue, and toy BB84 / three-stage protocol simulations.
"""

from qinfo.errors import (
    ArgumentError,
    ConsistencyError,
    DimensionError,
    NegativeEigenvalueError,
    NotHermitianError,
    NotNormalizedError,
    PrecisionError,
    QInfoError,
    TraceError,
    ValidationError,
)
from qinfo.qcore import (
    DensityMatrix,
    PureState,
    hermitian_eigenvalues,
    partial_trace,
    pure_to_density,
    tensor_product,
    validate_density,
)
from qinfo.entropy import (
    Ensemble,
    EntropyReport,
    entropy_report,
    informational_entropy,
    partial_entropy,
    shannon_entropy,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "ConsistencyError",
    "DensityMatrix",
    "DimensionError",
    "Ensemble",
    "EntropyReport",
    "NegativeEigenvalueError",
    "NotHermitianError",
    "NotNormalizedError",
    "PrecisionError",
    "PureState",
    "QInfoError",
    "TraceError",
    "ValidationError",
    "entropy_report",
    "hermitian_eigenvalues",
    "informational_entropy",
    "partial_entropy",
    "partial_trace",
    "pure_to_density",
    "shannon_entropy",
    "tensor_product",
    "validate_density",
    "von_neumann_entropy",
]
