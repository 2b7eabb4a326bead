"""Core value types: contact sequences, window specs, snapshots and reports.

Everything here is immutable after construction and safe to share between
workers.  Node ids are dense 0-based integers; the mapping back to the
original labels travels with the ContactSequence.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, NamedTuple, Optional, Tuple

import numpy as np


class Contact(NamedTuple):
    """One instantaneous interaction between two distinct nodes."""

    u: int
    v: int
    t: int


def canonicalize_pair(a: int, b: int) -> Tuple[int, int]:
    """Order an undirected node pair as (min, max).

    Self-loops are rejected: a proximity contact is always between two
    distinct persons, so ``a == b`` indicates malformed input.
    """
    if a == b:
        raise ValueError(f"self-loop contact on node {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class ContactSequence:
    """The raw temporal network: deduplicated instantaneous contacts.

    ``data`` is an (n, 3) int64 array with rows (t, u, v), sorted by
    (t, u, v), no duplicate rows, u < v.  ``t_min``/``t_max`` delimit the
    observation period; they are preserved by filtering even when the
    boundary contacts are removed, so window grids derived from a filtered
    sequence stay anchored to the original span.  An empty sequence with
    explicit bounds means "observed, nothing seen".
    """

    data: np.ndarray
    dt: int
    t_min: Optional[int]
    t_max: Optional[int]
    labels: Tuple = ()

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=np.int64)
        if data.ndim != 2 or data.shape[1] != 3:
            raise ValueError(f"contact data must be (n, 3), got {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        n = len(data)
        if (self.t_min is None) != (self.t_max is None):
            raise ValueError("t_min and t_max must be set together")
        if n and self.t_min is None:
            raise ValueError("non-empty sequence needs explicit bounds")
        if self.t_min is not None:
            if self.t_max < self.t_min:
                raise ValueError(f"t_max {self.t_max} < t_min {self.t_min}")
            if (self.t_max - self.t_min) % self.dt:
                raise ValueError("observation span not a multiple of dt")
        if n:
            t, u, v = data[:, 0], data[:, 1], data[:, 2]
            if not (u < v).all():
                raise ValueError("contacts must be canonical (u < v)")
            if t[0] < self.t_min or t[-1] > self.t_max:
                raise ValueError("contact timestamps outside [t_min, t_max]")
            off = (t - self.t_min) % self.dt
            if off.any():
                bad = int(t[np.nonzero(off)[0][0]])
                raise ValueError(f"timestamp {bad} not aligned to dt={self.dt}")
            order = np.lexsort((v, u, t))
            if (order != np.arange(n)).any():
                raise ValueError("contacts must be sorted by (t, u, v)")
            if n > 1 and (data[1:] == data[:-1]).all(axis=1).any():
                raise ValueError("duplicate (u, v, t) contact")
        if self.labels:
            object.__setattr__(self, "labels", tuple(self.labels))
            if n and int(max(data[:, 1].max(), data[:, 2].max())) >= len(self.labels):
                raise ValueError("node id exceeds label table")

    @classmethod
    def from_contacts(
        cls,
        contacts: Iterable[Tuple[int, int, int]],
        dt: int,
        t_min: Optional[int] = None,
        t_max: Optional[int] = None,
        labels: Tuple = (),
    ) -> "ContactSequence":
        """Build from (u, v, t) triples: canonicalize, deduplicate, sort.

        Bounds default to the observed min/max timestamp.
        """
        rows = [(t, *canonicalize_pair(u, v)) for u, v, t in contacts]
        data = np.asarray(sorted(set(rows)), dtype=np.int64).reshape(-1, 3)
        if len(data):
            if t_min is None:
                t_min = int(data[0, 0])
            if t_max is None:
                t_max = int(data[-1, 0])
        return cls(data=data, dt=dt, t_min=t_min, t_max=t_max, labels=labels)

    @property
    def t(self) -> np.ndarray:
        return self.data[:, 0]

    @property
    def u(self) -> np.ndarray:
        return self.data[:, 1]

    @property
    def v(self) -> np.ndarray:
        return self.data[:, 2]

    @property
    def node_count(self) -> int:
        if self.labels:
            return len(self.labels)
        if not len(self.data):
            return 0
        return int(self.data[:, 1:].max()) + 1

    def contacts(self) -> list[Contact]:
        return [Contact(int(u), int(v), int(t)) for t, u, v in self.data]

    def with_data(self, data: np.ndarray) -> "ContactSequence":
        """Same observation window and labels, different contact rows."""
        return replace(self, data=data)

    def __len__(self) -> int:
        return len(self.data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContactSequence):
            return NotImplemented
        return (
            self.dt == other.dt
            and self.t_min == other.t_min
            and self.t_max == other.t_max
            and self.labels == other.labels
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class WindowSpec:
    """Aggregation parameters: origin, window lengths and resolution.

    ``w_f`` is the filtering window, an integer multiple of the aggregation
    window ``w_a``; it defaults to ``w_a`` (single-timescale filtering).
    """

    t0: int
    w_a: int
    dt: int
    w_f: Optional[int] = None
    include_partial_tail: bool = False

    def __post_init__(self) -> None:
        if self.w_f is None:
            object.__setattr__(self, "w_f", self.w_a)
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.w_a < self.dt:
            raise ValueError(f"w_a={self.w_a} smaller than dt={self.dt}")
        if self.w_a % self.dt:
            raise ValueError(f"w_a={self.w_a} not a multiple of dt={self.dt}")
        if self.w_f < self.w_a:
            raise ValueError(f"w_f={self.w_f} smaller than w_a={self.w_a}")
        if self.w_f % self.w_a:
            raise ValueError(
                f"w_f={self.w_f} not an integer multiple of w_a={self.w_a}"
            )

    @property
    def steps_per_window(self) -> int:
        return self.w_a // self.dt

    @property
    def window_ratio(self) -> int:
        return self.w_f // self.w_a


class Window(NamedTuple):
    """Half-open interval [start, end); ``partial`` marks a tail window
    whose timestep range is not fully covered by the observation period."""

    start: int
    end: int
    partial: bool = False


@dataclass(frozen=True)
class Snapshot:
    """Static graph over one window: edge set with contact-count weights."""

    start: int
    end: int
    weights: Mapping[Tuple[int, int], int]
    partial: bool = False

    @property
    def edges(self) -> frozenset:
        return frozenset(self.weights)

    @property
    def edge_count(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class SnapshotGraph:
    """Chronological sequence of snapshots over consecutive windows."""

    spec: WindowSpec
    snapshots: Tuple[Snapshot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "snapshots", tuple(self.snapshots))
        prev = None
        for snap in self.snapshots:
            if snap.end - snap.start != self.spec.w_a:
                raise ValueError("snapshot window length differs from w_a")
            if prev is not None and snap.start != prev.end:
                raise ValueError("snapshot windows must be consecutive")
            if prev is not None and prev.partial:
                raise ValueError("only the final window may be partial")
            prev = snap

    def __len__(self) -> int:
        return len(self.snapshots)


@dataclass(frozen=True)
class DistanceReport:
    """Disagreement counts between an aggregated and an original network.

    ``fp``/``fn`` are counted in timestep-contacts (one (i, j, t) cell
    each).  ``original_contacts`` is the number of original contacts the
    comparison covers, which excludes contacts lost to a dropped tail
    window unless those were counted as misses.
    """

    fp: int
    fn: int
    original_contacts: int

    def __post_init__(self) -> None:
        if self.fp < 0 or self.fn < 0 or self.original_contacts < 0:
            raise ValueError("counts must be non-negative")
        if self.fn > self.original_contacts:
            raise ValueError("fn cannot exceed the covered contact count")

    @property
    def distance(self) -> int:
        return self.fp + self.fn

    @property
    def retention(self) -> float:
        if not self.original_contacts:
            return 0.0
        return 1.0 - self.fn / self.original_contacts

    @property
    def normalized_distance(self) -> float:
        if not self.original_contacts:
            return 0.0
        return self.distance / self.original_contacts


@dataclass(frozen=True)
class SweepCell:
    """One evaluated grid point of a sweep over (window size, threshold)."""

    w_a: int
    w_f: int
    threshold_pct: float
    mode: str
    seed: Optional[int]
    stability: Optional[float]
    report: DistanceReport
    snapshot_count: int
    kept_link_fraction: float

    def __post_init__(self) -> None:
        if self.mode == "stochastic" and self.seed is None:
            raise ValueError("stochastic cells require a seed")
        if not 0.0 <= self.threshold_pct <= 100.0:
            raise ValueError(f"threshold {self.threshold_pct} outside [0, 100]")
