"""Figure rendering for sweep grids emitted by the snapagg CLI."""

from .render import (
    SCHEMA,
    SchemaError,
    humanize_seconds,
    read_grid,
    render_fidelity_curves,
    render_heatmap,
)

__version__ = "0.1.0"

__all__ = [
    "SCHEMA",
    "SchemaError",
    "humanize_seconds",
    "read_grid",
    "render_fidelity_curves",
    "render_heatmap",
]
