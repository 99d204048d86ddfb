"""Thermal entanglement in small XX/XXZ spin rings.

The package computes Gibbs-state entanglement of spin-1/2 rings in a
magnetic field by exact diagonalization, and carries the complete closed
forms for the four-site XX ring as an independent second route. The two
routes never share code; the validate suite and the test battery hold them
against each other.

Layout: model (Hamiltonians), spectral (diagonalization and Gibbs states),
entanglement (partial trace and measures), xx4 (closed forms), sweep
(grids, boundaries, figure presets), tableio (CSV / JSON-lines), validate
(cross-check suite), cli (command line), _kernels (pure and compiled batch
backends).
"""

from ._kernels import (
    BACKEND_NAME,
    alternate_concurrence_closed,
    available_backends,
    thermal_pair_concurrence,
)
from .entanglement import (
    EntanglementReport,
    full_report,
    global_entanglement,
    i_concurrence,
    partial_trace,
    wootters_concurrence,
)
from .model import (
    ModelParams,
    basis_bits,
    basis_index,
    build_xx_hamiltonian,
    build_xxz_hamiltonian,
    magnetization_operator,
    pauli_site_operator,
    ring_bonds,
)
from .spectral import (
    SpectralDecomposition,
    boltzmann_weights,
    eigendecompose,
    gibbs_state,
    ground_state_projector,
    log_partition_function,
    partition_function,
    thermal_energy,
)
from .sweep import (
    FIGURE_IDS,
    QUANTITIES,
    BoundaryCurve,
    FigureData,
    GridSpec,
    SweepTable,
    boundary_curve,
    critical_fields,
    critical_temperature,
    entanglement_onset_field,
    figure_dataset,
    level_contours,
    run_sweep,
)
from .validate import CheckResult, run_validation
from .xx4 import (
    PairWeights,
    analytic_concurrence_alternate,
    analytic_eigenstates,
    analytic_partition_function,
    analytic_rho13,
    analytic_spectrum,
    crossing_fields,
    zero_temperature_concurrence,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "BoundaryCurve",
    "CheckResult",
    "EntanglementReport",
    "FIGURE_IDS",
    "FigureData",
    "GridSpec",
    "ModelParams",
    "PairWeights",
    "QUANTITIES",
    "SpectralDecomposition",
    "SweepTable",
    "alternate_concurrence_closed",
    "analytic_concurrence_alternate",
    "analytic_eigenstates",
    "analytic_partition_function",
    "analytic_rho13",
    "analytic_spectrum",
    "available_backends",
    "basis_bits",
    "basis_index",
    "boltzmann_weights",
    "boundary_curve",
    "build_xx_hamiltonian",
    "build_xxz_hamiltonian",
    "critical_fields",
    "critical_temperature",
    "crossing_fields",
    "eigendecompose",
    "entanglement_onset_field",
    "figure_dataset",
    "full_report",
    "gibbs_state",
    "global_entanglement",
    "ground_state_projector",
    "i_concurrence",
    "level_contours",
    "log_partition_function",
    "magnetization_operator",
    "partial_trace",
    "partition_function",
    "pauli_site_operator",
    "ring_bonds",
    "run_sweep",
    "run_validation",
    "thermal_energy",
    "thermal_pair_concurrence",
    "wootters_concurrence",
    "zero_temperature_concurrence",
]
