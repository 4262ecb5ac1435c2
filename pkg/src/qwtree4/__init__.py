"""Continuous-time quantum walks on diameter-4 trees.

Analytic spectra, strongly cospectral pairs, transfer fidelity and its
sensitivity, and explicit high-fidelity readout-time schedules, all
cross-validated against a dense eigendecomposition oracle.
"""

__version__ = "0.1.0"

from .cospectral import (
    CospectralPair,
    eigenvalue_support,
    pgst_obstruction_check,
    sign_partition,
    strongly_cospectral_pairs,
)
from .evolution import (
    TransferRecord,
    amplitude,
    dense_unitary_oracle,
    fidelity,
    scan,
    sensitivity,
)
from .exact import PiTime, Radical
from .spectrum import (
    ProjectionData,
    SpectrumMultiset,
    SupportEigenvalues,
    full_spectrum,
    projection_data,
    stems_from_spectrum,
    support_eigenvalues,
)
from .tree import (
    LabeledTree,
    TreeParams,
    adjacency_matrix,
    build_tree,
    validate_params,
    vertex_count,
)

__all__ = [
    "__version__",
    "CospectralPair",
    "LabeledTree",
    "PiTime",
    "ProjectionData",
    "Radical",
    "SpectrumMultiset",
    "SupportEigenvalues",
    "TransferRecord",
    "TreeParams",
    "adjacency_matrix",
    "amplitude",
    "build_tree",
    "dense_unitary_oracle",
    "eigenvalue_support",
    "fidelity",
    "full_spectrum",
    "pgst_obstruction_check",
    "projection_data",
    "scan",
    "sensitivity",
    "sign_partition",
    "stems_from_spectrum",
    "strongly_cospectral_pairs",
    "support_eigenvalues",
    "validate_params",
    "vertex_count",
]
