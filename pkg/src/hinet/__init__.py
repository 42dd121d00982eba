"""Weighted bipartite interaction-network analytics.

Model interaction logs as two-set weighted graphs, then analyze them at
three levels: per-node quantity/diversity metrics, statistically pruned
edge backbones under binomial null models, and nonparametric clustering of
the focal set by minimum description length.
"""

from . import errors
from .clustering import (
    ClusterResult,
    Partition,
    ProjectedNetwork,
    block_weights,
    cluster,
    description_length,
    exhaustive_cluster,
    partition_at,
    project_cluster,
    projection_to_hin,
    prune_projection,
)
from .ingest import (
    HinSpec,
    IngestReport,
    Table,
    ingest,
    ingest_report,
    ingest_with_report,
    read_delimited_file,
    read_delimited_text,
)
from .metrics import (
    NodeMetrics,
    diversity,
    metrics_table,
    metrics_to_csv,
    metrics_to_dicts,
    quantity,
    quantity_group,
)
from .model import (
    Hin,
    NodeLabel,
    NodeRef,
    NodeSet,
    build_hin,
    from_canonical_dict,
    from_canonical_json,
    read_json,
    subnetwork,
    to_canonical_dict,
    to_canonical_json,
    write_json,
)
from .pruning import (
    CalibrationReport,
    FixDeg,
    NullModelSpec,
    PruneResult,
    binomial_quantile,
    null_simulation,
    prune,
    strength_heterogeneity,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "Hin",
    "NodeLabel",
    "NodeRef",
    "NodeSet",
    "build_hin",
    "subnetwork",
    "to_canonical_json",
    "to_canonical_dict",
    "from_canonical_json",
    "from_canonical_dict",
    "read_json",
    "write_json",
    "Table",
    "HinSpec",
    "IngestReport",
    "ingest",
    "ingest_report",
    "ingest_with_report",
    "read_delimited_text",
    "read_delimited_file",
    "NodeMetrics",
    "quantity",
    "quantity_group",
    "diversity",
    "metrics_table",
    "metrics_to_csv",
    "metrics_to_dicts",
    "FixDeg",
    "NullModelSpec",
    "PruneResult",
    "CalibrationReport",
    "binomial_quantile",
    "prune",
    "null_simulation",
    "strength_heterogeneity",
    "Partition",
    "ClusterResult",
    "ProjectedNetwork",
    "block_weights",
    "description_length",
    "cluster",
    "exhaustive_cluster",
    "partition_at",
    "project_cluster",
    "projection_to_hin",
    "prune_projection",
]
