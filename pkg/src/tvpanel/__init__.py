"""Time-varying-coefficient panel least squares for growth decomposition.

Fit per-interval cross-sectional regressions of one-year target changes on
lagged macro levels, split fitted growth into per-variable contribution
paths, and reconstruct the target level series three ways with an exact
accumulated-error identity.
"""

from .decomposition import (
    ContributionTable,
    DecompositionResult,
    component_deltas,
    component_paths,
    contribution_table,
    decompose,
    relative_contribution,
)
from .errors import (
    DataError,
    DegenerateDesign,
    DimensionMismatch,
    DuplicateCell,
    DuplicateObservation,
    EmptyIntersection,
    GapInSeries,
    GrowthPanelError,
    InsufficientObservations,
    InvalidPanel,
    MalformedRow,
    ManifestError,
    MismatchedYears,
    NumericalError,
    RankDeficient,
    UnbalancedPanel,
    UnknownVariable,
)
from .estimator import CoefficientPath, FitDiagnostics, fit_interval, fit_path
from .ingest import Manifest, RawSeries, apply_transform, load_manifest, parse_long_csv, series_to_rows
from .panel import (
    GrowthSeries,
    PanelDataset,
    RankTable,
    Transform,
    VariableSpec,
    build_panel,
    empirical_growth,
    rank_table,
)
from .reconstruction import ReconstructionSet, reconstruct, reconstruct_dynamic, reconstruct_static
from .synth import SynthSpec, default_path, from_seed, generate

__version__ = "0.1.0"

__all__ = [
    "CoefficientPath",
    "ContributionTable",
    "DataError",
    "DecompositionResult",
    "DegenerateDesign",
    "DimensionMismatch",
    "DuplicateCell",
    "DuplicateObservation",
    "EmptyIntersection",
    "FitDiagnostics",
    "GapInSeries",
    "GrowthPanelError",
    "GrowthSeries",
    "InsufficientObservations",
    "InvalidPanel",
    "MalformedRow",
    "Manifest",
    "ManifestError",
    "MismatchedYears",
    "NumericalError",
    "PanelDataset",
    "RankDeficient",
    "RankTable",
    "RawSeries",
    "ReconstructionSet",
    "SynthSpec",
    "Transform",
    "UnbalancedPanel",
    "UnknownVariable",
    "VariableSpec",
    "apply_transform",
    "build_panel",
    "component_deltas",
    "component_paths",
    "contribution_table",
    "decompose",
    "default_path",
    "empirical_growth",
    "fit_interval",
    "fit_path",
    "from_seed",
    "generate",
    "load_manifest",
    "parse_long_csv",
    "rank_table",
    "reconstruct",
    "reconstruct_dynamic",
    "reconstruct_static",
    "relative_contribution",
    "series_to_rows",
]
