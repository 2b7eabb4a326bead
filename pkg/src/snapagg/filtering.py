"""Per-window link filtering applied to the contact sequence.

The percentile filter removes, inside each filtering window, the N% of
links with the lowest contact count, with one consistency rule: links
tied with the lightest surviving link also survive.  Filtering happens
*before* aggregation, over windows of length ``w_f`` that may span
several aggregation windows.  A stochastic variant removes the same
number of links uniformly at random and serves as a baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .aggregate import window_partition
from .model import ContactSequence, SnapshotGraph, Window, WindowSpec

Edge = Tuple[int, int]

MODES = ("percentile", "stochastic")


@dataclass(frozen=True)
class FilterOutcome:
    """Kept/removed split of one window's links.

    ``theta`` is the realized weight threshold: the largest weight among
    removed links (0 when nothing was removed, or in stochastic mode,
    where removal is not weight-based).
    """

    kept: frozenset
    removed: frozenset
    theta: int
    realized_removed_fraction: float


def _removal_count(link_count: int, n_pct: float) -> int:
    # floor(n_pct/100 * L) in exact arithmetic; float n_pct is taken at
    # face value rather than through binary rounding surprises.
    k = int(Fraction(str(n_pct)) * link_count / 100)
    return min(max(k, 0), link_count)


def stochastic_removed_count(link_count: int, n_pct: float) -> int:
    """Number of links the stochastic baseline removes from L links."""
    if link_count < 0:
        raise ValueError("link count must be >= 0")
    if not 0.0 <= n_pct <= 100.0:
        raise ValueError(f"threshold {n_pct} outside [0, 100]")
    return _removal_count(link_count, n_pct)


def percentile_select(weights: Mapping[Edge, int], n_pct: float) -> FilterOutcome:
    """Split links into kept/removed by the N-th weight percentile.

    The k = floor(N/100 * L) lightest links are marked for removal, then
    every marked link whose weight equals the lightest kept link's weight
    is unmarked again, so equal-weight links never straddle the cut.
    """
    if not 0.0 <= n_pct <= 100.0:
        raise ValueError(f"threshold {n_pct} outside [0, 100]")
    L = len(weights)
    if L == 0:
        return FilterOutcome(frozenset(), frozenset(), 0, 0.0)
    k = _removal_count(L, n_pct)
    if k == L:
        removed = frozenset(weights)
        theta = max(weights.values())
        return FilterOutcome(frozenset(), removed, theta, 1.0)
    boundary = sorted(weights.values())[k]  # weight of the first kept link
    removed = frozenset(e for e, w in weights.items() if w < boundary)
    kept = frozenset(weights) - removed
    theta = max((weights[e] for e in removed), default=0)
    return FilterOutcome(kept, removed, theta, len(removed) / L)


def _stochastic_select(
    weights: Mapping[Edge, int], n_pct: float, seed: int, window_ordinal: int
) -> FilterOutcome:
    links = sorted(weights)
    L = len(links)
    k = stochastic_removed_count(L, n_pct)
    # Sub-seeded per window so results do not depend on scheduling order.
    rng = np.random.default_rng([seed, window_ordinal])
    picked = rng.choice(L, size=k, replace=False) if L else []
    removed = frozenset(links[i] for i in picked)
    kept = frozenset(links) - removed
    return FilterOutcome(kept, removed, 0, k / L if L else 0.0)


def _window_weights(
    seq: ContactSequence, windows: List[Window]
) -> List[Dict[Edge, int]]:
    """Edge -> contact count map for each window, off the sorted time axis."""
    weights: List[Dict[Edge, int]] = []
    t = seq.t
    for win in windows:
        lo, hi = np.searchsorted(t, [win.start, win.end])
        wmap: Dict[Edge, int] = {}
        if hi > lo:
            pairs, counts = np.unique(seq.data[lo:hi, 1:], axis=0, return_counts=True)
            wmap = {(int(u), int(v)): int(c) for (u, v), c in zip(pairs, counts)}
        weights.append(wmap)
    return weights


def filter_windows(
    seq: ContactSequence,
    spec: WindowSpec,
    n_pct: float,
    mode: str = "percentile",
    seed: Optional[int] = None,
) -> List[Tuple[Window, FilterOutcome]]:
    """Run the per-window selection without touching the sequence."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "stochastic" and seed is None:
        raise ValueError("stochastic filtering requires a seed")
    if seq.t_min is None:
        return []
    fspec = replace(spec, w_a=spec.w_f, w_f=spec.w_f)
    windows = window_partition(seq.t_min, seq.t_max, fspec)
    if not windows:
        return []
    weights = _window_weights(seq, windows)
    out = []
    for win, wmap in zip(windows, weights):
        ordinal = (win.start - spec.t0) // spec.w_f
        if mode == "percentile":
            outcome = percentile_select(wmap, n_pct)
        else:
            outcome = _stochastic_select(wmap, n_pct, seed, ordinal)
        out.append((win, outcome))
    return out


def apply_outcomes(
    seq: ContactSequence,
    selected: List[Tuple[Window, FilterOutcome]],
) -> ContactSequence:
    """Delete every contact of a removed link inside its window."""
    if not selected or not len(seq):
        return seq
    drop = np.zeros(len(seq), dtype=bool)
    t = seq.t
    m = seq.node_count + 1
    for win, outcome in selected:
        if not outcome.removed:
            continue
        lo, hi = np.searchsorted(t, [win.start, win.end])
        if lo == hi:
            continue
        codes = seq.u[lo:hi] * m + seq.v[lo:hi]
        removed_codes = np.fromiter(
            (u * m + v for u, v in outcome.removed),
            dtype=np.int64,
            count=len(outcome.removed),
        )
        drop[lo:hi] = np.isin(codes, removed_codes)
    return seq.with_data(seq.data[~drop])


def filter_sequence(
    seq: ContactSequence,
    spec: WindowSpec,
    n_pct: float,
    mode: str = "percentile",
    seed: Optional[int] = None,
) -> ContactSequence:
    """Delete, per filtering window, all contacts of the removed links.

    Contacts outside every filtering window (a dropped tail) pass through
    untouched.  The observation bounds and label table are preserved so
    the filtered sequence still describes the original time grid.
    """
    return apply_outcomes(seq, filter_windows(seq, spec, n_pct, mode, seed))


def filter_snapshots(
    g: SnapshotGraph,
    n_pct: float,
    mode: str = "percentile",
    seed: Optional[int] = None,
) -> SnapshotGraph:
    """The classic route: filter each snapshot after aggregation.

    Uses the same per-window selection rules as filter_sequence; with
    w_f = w_a the two routes produce identical snapshot graphs.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "stochastic" and seed is None:
        raise ValueError("stochastic filtering requires a seed")
    snapshots = []
    for snap in g.snapshots:
        if mode == "percentile":
            outcome = percentile_select(snap.weights, n_pct)
        else:
            ordinal = (snap.start - g.spec.t0) // g.spec.w_a
            outcome = _stochastic_select(snap.weights, n_pct, seed, ordinal)
        weights = {e: nc for e, nc in snap.weights.items() if e in outcome.kept}
        snapshots.append(replace(snap, weights=weights))
    return SnapshotGraph(spec=g.spec, snapshots=tuple(snapshots))
