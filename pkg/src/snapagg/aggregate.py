"""Time-window partitioning and projection of contacts into snapshots.

A window grid is a run of consecutive half-open tiles of length ``w_a``
anchored at ``t0``.  The final tile is *partial* when its timestep range
extends past the last observed timestamp; partial tiles are dropped
unless the spec opts in, in which case they keep their nominal length
and carry a flag.  Empty windows stay in the sequence: dropping them
would splice non-adjacent periods together.
"""

from __future__ import annotations

from typing import IO, List, Union

import numpy as np

from .model import ContactSequence, Snapshot, SnapshotGraph, Window, WindowSpec


def window_partition(t_min: int, t_max: int, spec: WindowSpec) -> List[Window]:
    """Tile [t0, t_max] with w_a-length windows.

    The tail tile is partial iff its end exceeds ``t_max + dt``, i.e. the
    observation period does not reach its last timestep.
    """
    if t_max < spec.t0:
        raise ValueError(f"t_max={t_max} precedes window origin t0={spec.t0}")
    if t_min < spec.t0:
        raise ValueError(f"t0={spec.t0} must not exceed t_min={t_min}")
    windows = []
    start = spec.t0
    while start <= t_max:
        end = start + spec.w_a
        partial = end > t_max + spec.dt
        if not partial or spec.include_partial_tail:
            windows.append(Window(start, end, partial))
        start = end
    return windows


def _check_grid(seq: ContactSequence, spec: WindowSpec) -> None:
    if seq.dt != spec.dt:
        raise ValueError(f"sequence dt={seq.dt} != spec dt={spec.dt}")
    if seq.t_min is not None and (seq.t_min - spec.t0) % spec.dt:
        raise ValueError(
            f"window origin t0={spec.t0} not aligned to the dt={spec.dt} "
            f"grid anchored at t_min={seq.t_min}"
        )


def aggregate(seq: ContactSequence, spec: WindowSpec) -> SnapshotGraph:
    """Project contacts onto the window grid, one snapshot per window.

    An edge appears in a snapshot iff it has at least one contact in the
    window; its weight is the number of such contacts (NC).  Contacts in a
    dropped tail window are ignored.
    """
    _check_grid(seq, spec)
    if seq.t_min is None:
        return SnapshotGraph(spec=spec, snapshots=())
    windows = window_partition(seq.t_min, seq.t_max, spec)
    per_window: List[dict] = [dict() for _ in windows]
    if len(seq) and windows:
        idx = (seq.t - spec.t0) // spec.w_a
        keep = idx < len(windows)
        keyed = np.column_stack([idx[keep], seq.u[keep], seq.v[keep]])
        uniq, counts = np.unique(keyed, axis=0, return_counts=True)
        for (w, u, v), nc in zip(uniq, counts):
            per_window[w][(int(u), int(v))] = int(nc)
    snapshots = tuple(
        Snapshot(start=w.start, end=w.end, weights=weights, partial=w.partial)
        for w, weights in zip(windows, per_window)
    )
    return SnapshotGraph(spec=spec, snapshots=snapshots)


def merge_pairwise(g: SnapshotGraph) -> SnapshotGraph:
    """Join adjacent snapshot pairs by edge union and weight sum.

    Doubles the window size; requires an even number of full windows.
    Useful as an independent route for checking window composition.
    """
    snaps = g.snapshots
    if len(snaps) % 2 or any(s.partial for s in snaps):
        raise ValueError("need an even number of full windows")
    merged = []
    for a, b in zip(snaps[::2], snaps[1::2]):
        weights = dict(a.weights)
        for e, nc in b.weights.items():
            weights[e] = weights.get(e, 0) + nc
        merged.append(Snapshot(start=a.start, end=b.end, weights=weights))
    w_a = g.spec.w_a * 2
    w_f = g.spec.w_f if g.spec.w_f % w_a == 0 else w_a
    spec = WindowSpec(
        t0=g.spec.t0,
        w_a=w_a,
        dt=g.spec.dt,
        w_f=w_f,
        include_partial_tail=g.spec.include_partial_tail,
    )
    return SnapshotGraph(spec=spec, snapshots=tuple(merged))


def write_snapshot_graph(g: SnapshotGraph, path: Union[str, IO[str]]) -> None:
    """Structured-text dump: per snapshot, window bounds then 'u v nc' rows."""
    own = isinstance(path, (str, bytes)) or hasattr(path, "__fspath__")
    fh = open(path, "w") if own else path
    try:
        s = g.spec
        fh.write("# snapagg snapshots v1\n")
        fh.write(
            f"# t0={s.t0} w_a={s.w_a} w_f={s.w_f} dt={s.dt} "
            f"include_partial_tail={int(s.include_partial_tail)}\n"
        )
        for snap in g.snapshots:
            kind = "partial" if snap.partial else "full"
            fh.write(f"snapshot {snap.start} {snap.end} {kind}\n")
            for (u, v) in sorted(snap.weights):
                fh.write(f"{u} {v} {snap.weights[(u, v)]}\n")
    finally:
        if own:
            fh.close()


def read_snapshot_graph(path: Union[str, IO[str]]) -> SnapshotGraph:
    own = isinstance(path, (str, bytes)) or hasattr(path, "__fspath__")
    fh = open(path, "r") if own else path
    try:
        spec = None
        snapshots = []
        current = None
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("t0="):
                    kv = dict(part.split("=") for part in body.split())
                    spec = WindowSpec(
                        t0=int(kv["t0"]),
                        w_a=int(kv["w_a"]),
                        dt=int(kv["dt"]),
                        w_f=int(kv["w_f"]),
                        include_partial_tail=bool(int(kv["include_partial_tail"])),
                    )
                continue
            if line.startswith("snapshot "):
                _, start, end, kind = line.split()
                current = {}
                snapshots.append(
                    Snapshot(
                        start=int(start),
                        end=int(end),
                        weights=current,
                        partial=kind == "partial",
                    )
                )
                continue
            u, v, nc = line.split()
            current[(int(u), int(v))] = int(nc)
        if spec is None:
            raise ValueError("missing snapshot-graph header")
        return SnapshotGraph(spec=spec, snapshots=tuple(snapshots))
    finally:
        if own:
            fh.close()
