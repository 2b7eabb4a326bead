"""Snapshot-graph aggregation and evaluation of temporal contact networks.

Converts raw (i, j, t) contact data into sequences of static snapshot
graphs via time-window aggregation, optionally thinning the links with a
two-timescale percentile filter, and scores the result: stability of
consecutive snapshots and fidelity to the original contacts.
"""

from .aggregate import (
    aggregate,
    merge_pairwise,
    read_snapshot_graph,
    window_partition,
    write_snapshot_graph,
)
from .filtering import (
    FilterOutcome,
    filter_sequence,
    filter_snapshots,
    filter_windows,
    percentile_select,
    stochastic_removed_count,
)
from .ingest import (
    PRESETS,
    ColumnMap,
    ParseError,
    infer_resolution,
    load_contacts,
    parse_contacts,
    read_contacts,
    write_contacts,
)
from .metrics import distance, distance_oracle, jaccard, stability
from .model import (
    Contact,
    ContactSequence,
    DistanceReport,
    Snapshot,
    SnapshotGraph,
    SweepCell,
    Window,
    WindowSpec,
    canonicalize_pair,
)
from .sweep import (
    DEFAULT_WINDOWS,
    SweepConfig,
    SweepError,
    emit,
    evaluate_cell,
    read_grid_csv,
    resolve_t0,
    run_sweep,
)
from .synth import PlantedInstance, generate_planted

__version__ = "0.1.0"

__all__ = [
    "Contact",
    "ContactSequence",
    "ColumnMap",
    "DistanceReport",
    "DEFAULT_WINDOWS",
    "FilterOutcome",
    "ParseError",
    "PlantedInstance",
    "PRESETS",
    "Snapshot",
    "SnapshotGraph",
    "SweepCell",
    "SweepConfig",
    "SweepError",
    "Window",
    "WindowSpec",
    "aggregate",
    "canonicalize_pair",
    "distance",
    "distance_oracle",
    "emit",
    "evaluate_cell",
    "filter_sequence",
    "filter_snapshots",
    "filter_windows",
    "generate_planted",
    "infer_resolution",
    "jaccard",
    "load_contacts",
    "merge_pairwise",
    "parse_contacts",
    "percentile_select",
    "read_contacts",
    "read_grid_csv",
    "read_snapshot_graph",
    "resolve_t0",
    "run_sweep",
    "stability",
    "stochastic_removed_count",
    "window_partition",
    "write_contacts",
    "write_snapshot_graph",
]
