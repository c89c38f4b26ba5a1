"""Correlation-based hierarchical taxonomies of time-series panels.

Pipeline: load a panel of signals, transform to returns, estimate the
Pearson correlation matrix, map it to the metric distance
d = sqrt(2 (1 - rho)), extract the minimal spanning tree, and read off
the single-linkage / subdominant-ultrametric dendrogram. Extras:
correlation censuses, rolling-window tree dynamics, a deterministic
factor-model panel generator, and deterministic exporters.
"""

from .correlation import (
    STRONG_THRESHOLD,
    CorrelationCensus,
    CorrelationMatrix,
    census,
    pearson_matrix,
)
from .distance import AxiomViolation, DistanceMatrix, check_metric_axioms, to_distance
from .dynamics import (
    SplitComparison,
    TreeSequence,
    WindowSpec,
    edge_survival,
    rolling_trees,
    split_compare,
)
from .errors import (
    AlignmentError,
    ComparisonError,
    CorrTreeError,
    DegenerateAssetError,
    DomainError,
    GeneratorSpecError,
    InsufficientDataError,
    PanelParseError,
    SchemaError,
    ShapeError,
    SizeError,
    UnknownAssetError,
)
from .export import export_dot, export_graphml, export_newick, matrix_csv, survival_csv
from .hierarchy import (
    Dendrogram,
    Merge,
    cophenetic_matrix,
    single_linkage,
    subdominant_ultrametric,
)
from .mst import (
    SpanningTree,
    TreeEdge,
    build_mst,
    mst_oracle,
    spans_connected_subtree,
    tree_degrees,
)
from .panel import TimeSeriesPanel, align_panels, dump_panel, load_panel
from .synth import FactorModelSpec, generate, parse_group_spec
from .transforms import (
    SIGNAL_KINDS,
    ReturnsMatrix,
    log_returns,
    rank_signal,
    raw_signal,
    rebase,
    zscore,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "AxiomViolation",
    "ComparisonError",
    "CorrTreeError",
    "CorrelationCensus",
    "CorrelationMatrix",
    "Dendrogram",
    "DegenerateAssetError",
    "DistanceMatrix",
    "DomainError",
    "FactorModelSpec",
    "GeneratorSpecError",
    "InsufficientDataError",
    "Merge",
    "PanelParseError",
    "ReturnsMatrix",
    "SIGNAL_KINDS",
    "STRONG_THRESHOLD",
    "SchemaError",
    "ShapeError",
    "SizeError",
    "SpanningTree",
    "SplitComparison",
    "TimeSeriesPanel",
    "TreeEdge",
    "TreeSequence",
    "UnknownAssetError",
    "WindowSpec",
    "align_panels",
    "build_mst",
    "census",
    "check_metric_axioms",
    "cophenetic_matrix",
    "dump_panel",
    "edge_survival",
    "export_dot",
    "export_graphml",
    "export_newick",
    "generate",
    "load_panel",
    "log_returns",
    "matrix_csv",
    "mst_oracle",
    "parse_group_spec",
    "pearson_matrix",
    "rank_signal",
    "raw_signal",
    "rebase",
    "rolling_trees",
    "single_linkage",
    "spans_connected_subtree",
    "split_compare",
    "subdominant_ultrametric",
    "survival_csv",
    "to_distance",
    "tree_degrees",
    "zscore",
]
