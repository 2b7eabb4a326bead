"""Evaluation scores for snapshot graphs: stability and fidelity.

Stability is a weighted average of edge-set Jaccard similarity between
consecutive snapshots, weighted by the smaller snapshot's link count so
that near-empty transitions (nights, weekends) do not dominate.
Fidelity is measured as a distance: the number of timestep-contact cells
on which the aggregated network and the original sequence disagree,
split into false positives (introduced by projecting a whole window)
and false negatives (real contacts lost to filtering or dropped
windows).
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from .model import ContactSequence, DistanceReport, Snapshot, SnapshotGraph

logger = logging.getLogger(__name__)


def jaccard(s1: Snapshot, s2: Snapshot) -> Optional[float]:
    """|E1 ∩ E2| / |E1 ∪ E2| over unweighted edge sets.

    Returns None when both edge sets are empty: similarity of nothing to
    nothing is undefined, not 1 or 0.
    """
    e1, e2 = set(s1.weights), set(s2.weights)
    union = len(e1 | e2)
    if union == 0:
        return None
    return len(e1 & e2) / union


def stability(g: SnapshotGraph, similarity=jaccard) -> Optional[float]:
    """Weighted mean snapshot-to-snapshot similarity (Jaccard by default).

    Pair weight is min(|E1|, |E2|); zero-weight pairs are skipped without
    evaluating their similarity.  Returns None when every pair weight is
    zero (reported, never silently 0).  Any ``similarity(s1, s2) -> float``
    over two snapshots can replace the default.
    """
    snaps = g.snapshots
    if len(snaps) < 2:
        raise ValueError("stability needs at least 2 snapshots")
    num = 0.0
    den = 0
    skipped = 0
    for s1, s2 in zip(snaps, snaps[1:]):
        w = min(s1.edge_count, s2.edge_count)
        if w == 0:
            skipped += 1
            continue
        num += similarity(s1, s2) * w
        den += w
    if skipped:
        logger.debug("stability: skipped %d zero-weight snapshot pairs", skipped)
    if den == 0:
        return None
    return num / den


def _check_compat(g: SnapshotGraph, original: ContactSequence) -> None:
    if g.spec.dt != original.dt:
        raise ValueError(f"dt mismatch: graph {g.spec.dt} != sequence {original.dt}")
    if original.t_min is not None:
        if g.spec.t0 > original.t_min:
            raise ValueError("graph windows start after the first contact")
        if (original.t_min - g.spec.t0) % original.dt:
            raise ValueError("graph window origin off the sequence's time grid")


def _node_bound(g: SnapshotGraph, original: ContactSequence) -> int:
    m = original.node_count
    for snap in g.snapshots:
        for (u, v) in snap.weights:
            if v >= m:
                m = v + 1
    return m


def distance(
    g: SnapshotGraph,
    original: ContactSequence,
    count_tail_misses: bool = False,
) -> DistanceReport:
    """Disagreement counts between the aggregated graph and the original.

    Each snapshot edge asserts a contact at every timestep of its window,
    so it contributes (window steps - NC) false positives.  Each original
    contact whose (edge, window) pair is absent from the graph is a false
    negative.  Contacts falling outside every kept window were never shown
    to the aggregator; by default they are excluded from both the FN count
    and the contact denominator, unless ``count_tail_misses`` treats the
    dropped tail as part of the pipeline's loss.
    """
    _check_compat(g, original)
    dt = g.spec.dt
    fp = 0
    for snap in g.snapshots:
        steps = (snap.end - snap.start) // dt
        fp += steps * len(snap.weights) - sum(snap.weights.values())

    n_all = len(original)
    fn = 0
    covered = 0
    tail = 0
    if n_all:
        if g.snapshots:
            t0 = g.spec.t0
            w_a = g.spec.w_a
            end = g.snapshots[-1].end
            in_cov = original.t < end
            covered = int(in_cov.sum())
            tail = n_all - covered
            if covered:
                m = _node_bound(g, original)
                widx = (original.t[in_cov] - t0) // w_a
                keys = (widx * m + original.u[in_cov]) * m + original.v[in_cov]
                present = np.fromiter(
                    (
                        (((snap.start - t0) // w_a) * m + u) * m + v
                        for snap in g.snapshots
                        for (u, v) in snap.weights
                    ),
                    dtype=np.int64,
                )
                fn = covered - int(np.isin(keys, present).sum())
        else:
            tail = n_all
    if count_tail_misses:
        fn += tail
        covered = n_all
    return DistanceReport(fp=fp, fn=fn, original_contacts=covered)


def distance_oracle(
    g: SnapshotGraph,
    original: ContactSequence,
    count_tail_misses: bool = False,
    max_cells: int = 2_000_000,
) -> DistanceReport:
    """Reference fidelity computation on fully materialized tensors.

    Builds dense binary arrays a[u, v, step] and o[u, v, step] over the
    whole covered time grid and counts disagreements entry-wise.  Only
    for small instances; raises when the tensors would exceed
    ``max_cells`` entries.
    """
    _check_compat(g, original)
    dt = g.spec.dt
    if not g.snapshots and original.t_min is None:
        return DistanceReport(fp=0, fn=0, original_contacts=0)

    n = _node_bound(g, original)
    lo = g.spec.t0 if g.snapshots else original.t_min
    hi_candidates = [g.snapshots[-1].end] if g.snapshots else []
    if original.t_min is not None:
        lo = min(lo, original.t_min)
        hi_candidates.append(original.t_max + dt)
    hi = max(hi_candidates)
    steps = (hi - lo) // dt
    if n * n * steps > max_cells:
        raise ValueError(
            f"instance too large for the dense oracle: {n * n * steps} cells"
        )

    a = np.zeros((n, n, steps), dtype=bool)
    o = np.zeros((n, n, steps), dtype=bool)
    cov = np.zeros(steps, dtype=bool)
    for snap in g.snapshots:
        s0 = (snap.start - lo) // dt
        s1 = (snap.end - lo) // dt
        cov[s0:s1] = True
        for (u, v) in snap.weights:
            a[u, v, s0:s1] = True
    for t, u, v in original.data:
        o[u, v, (t - lo) // dt] = True

    fp = int((a & ~o).sum())
    fn_covered = int((o & ~a & cov[None, None, :]).sum())
    tail = int((o & ~cov[None, None, :]).sum())
    if count_tail_misses:
        return DistanceReport(
            fp=fp, fn=fn_covered + tail, original_contacts=len(original)
        )
    return DistanceReport(fp=fp, fn=fn_covered, original_contacts=len(original) - tail)
