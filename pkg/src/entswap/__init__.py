"""Entanglement swapping along 1-D repeater chains: exact density-matrix
engine, closed-form family formulas, threshold solvers and sweep tooling."""

from .closedform import (
    UNBOUNDED,
    BdsChainQuery,
    WernerChainQuery,
    bds_chain_concurrence,
    bds_chain_fidelity,
    bds_final_correlations,
    eta_threshold,
    max_entangled_swaps,
    subset_sum_normalization,
    visibility_product_threshold,
    werner_chain_concurrence,
    werner_chain_fidelity,
    werner_final_visibility,
)
from .errors import (
    ChainSwapError,
    ConfigError,
    DomainError,
    EntswapError,
    InvalidParametersError,
    InvalidStateError,
)
from .measures import (
    CLASSICAL_FIDELITY,
    MeasureReport,
    concurrence,
    concurrence_bds,
    concurrence_werner,
    octahedron_separable,
    report,
    teleportation_fidelity,
)
from .states import (
    PAULI,
    BdsParams,
    BlochForm,
    FourQubitState,
    StateDiagnostics,
    TwoQubitState,
    WernerParams,
    apply_local,
    bell_state,
    make_bell_diagonal,
    make_general,
    make_werner,
    partial_trace_mid,
    pauli_decompose,
    tensor,
    validate,
)
from .swap import (
    OUTCOME_LABELS,
    ChainSpec,
    NoiseModel,
    SwapOutcome,
    SwapResult,
    chain_swap,
    noisy_bell_measurement_ops,
    swap_once,
    swap_once_perfect,
    swap_once_povm,
)
from .sweep import (
    CSV_HEADER,
    ETA_GRID_DEFAULT,
    SweepConfig,
    SweepRecord,
    link_generator,
    run_sweep,
    sample_state,
    write_csv,
    write_summary_json,
)

__version__ = "0.1.0"

__all__ = [
    "BdsChainQuery",
    "BdsParams",
    "BlochForm",
    "CLASSICAL_FIDELITY",
    "CSV_HEADER",
    "ChainSpec",
    "ChainSwapError",
    "ConfigError",
    "DomainError",
    "ETA_GRID_DEFAULT",
    "EntswapError",
    "FourQubitState",
    "InvalidParametersError",
    "InvalidStateError",
    "MeasureReport",
    "NoiseModel",
    "OUTCOME_LABELS",
    "PAULI",
    "StateDiagnostics",
    "SwapOutcome",
    "SwapResult",
    "SweepConfig",
    "SweepRecord",
    "TwoQubitState",
    "UNBOUNDED",
    "WernerChainQuery",
    "WernerParams",
    "apply_local",
    "bds_chain_concurrence",
    "bds_chain_fidelity",
    "bds_final_correlations",
    "bell_state",
    "chain_swap",
    "concurrence",
    "concurrence_bds",
    "concurrence_werner",
    "eta_threshold",
    "link_generator",
    "make_bell_diagonal",
    "make_general",
    "make_werner",
    "max_entangled_swaps",
    "noisy_bell_measurement_ops",
    "octahedron_separable",
    "partial_trace_mid",
    "pauli_decompose",
    "report",
    "run_sweep",
    "sample_state",
    "subset_sum_normalization",
    "swap_once",
    "swap_once_perfect",
    "swap_once_povm",
    "teleportation_fidelity",
    "tensor",
    "validate",
    "visibility_product_threshold",
    "werner_chain_concurrence",
    "werner_chain_fidelity",
    "werner_final_visibility",
    "write_csv",
    "write_summary_json",
]
