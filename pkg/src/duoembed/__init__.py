"""Joint kernel spectral embeddings of two independently observed datasets,
with alignability screening, adaptive bandwidth selection, and noise-regime
diagnostics."""

from .data_model import DataMatrix, LabeledPartition, center_columns, load_csv, save_csv
from .embedding import (
    ExtensionContext,
    JointEmbedding,
    ScaledSvd,
    duo_svd,
    extend,
    khat,
    select_embeddings,
)
from .kernel import (
    Bandwidth,
    BandwidthSource,
    DistanceMatrix,
    KernelMatrix,
    auto_omega,
    build_duo_kernel,
    cross_sq_distances,
    merged_kernel,
    select_bandwidth,
)
from .pipeline import RunConfig, RunResult, RunStatus, run, write_run_artifact
from .screening import AlignabilityReport, joint_spectral_coords, knn_purity, screen_alignability
from .spectral_diagnostics import (
    MpLaw,
    NoiseRegimeReport,
    detect_noise_regime,
    free_conv_quantiles_mc,
    mp_edges,
    scaled_bulk_eigenvalues,
)

__all__ = [
    "AlignabilityReport",
    "Bandwidth",
    "BandwidthSource",
    "DataMatrix",
    "DistanceMatrix",
    "ExtensionContext",
    "JointEmbedding",
    "KernelMatrix",
    "LabeledPartition",
    "MpLaw",
    "NoiseRegimeReport",
    "RunConfig",
    "RunResult",
    "RunStatus",
    "ScaledSvd",
    "auto_omega",
    "build_duo_kernel",
    "center_columns",
    "cross_sq_distances",
    "detect_noise_regime",
    "duo_svd",
    "extend",
    "free_conv_quantiles_mc",
    "joint_spectral_coords",
    "khat",
    "knn_purity",
    "load_csv",
    "merged_kernel",
    "mp_edges",
    "run",
    "save_csv",
    "scaled_bulk_eigenvalues",
    "screen_alignability",
    "select_bandwidth",
    "select_embeddings",
    "write_run_artifact",
]

__version__ = "0.1.0"
