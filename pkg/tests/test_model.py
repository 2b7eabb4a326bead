import numpy as np
import pytest

from snapagg import (
    ContactSequence,
    DistanceReport,
    Snapshot,
    SnapshotGraph,
    SweepCell,
    WindowSpec,
    canonicalize_pair,
)


def test_canonicalize_orders_pair():
    assert canonicalize_pair(3, 1) == (1, 3)


def test_canonicalize_identity():
    assert canonicalize_pair(1, 3) == (1, 3)


def test_canonicalize_rejects_self_loop():
    with pytest.raises(ValueError):
        canonicalize_pair(2, 2)


class TestContactSequence:
    def test_from_contacts_canonicalizes_and_dedups(self):
        seq = ContactSequence.from_contacts([(2, 1, 20), (1, 2, 20), (1, 2, 0)], dt=20)
        assert [tuple(c) for c in seq.contacts()] == [(1, 2, 0), (1, 2, 20)]
        assert seq.t_min == 0 and seq.t_max == 20

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            ContactSequence.from_contacts([(1, 1, 0)], dt=1)

    def test_misaligned_timestamp_rejected(self):
        with pytest.raises(ValueError, match="not aligned"):
            ContactSequence.from_contacts([(0, 1, 0), (0, 1, 30), (0, 1, 40)], dt=20)

    def test_unsorted_data_rejected(self):
        data = np.array([[20, 0, 1], [0, 0, 1]])
        with pytest.raises(ValueError, match="sorted"):
            ContactSequence(data=data, dt=20, t_min=0, t_max=20)

    def test_duplicate_rows_rejected(self):
        data = np.array([[0, 0, 1], [0, 0, 1]])
        with pytest.raises(ValueError, match="duplicate"):
            ContactSequence(data=data, dt=20, t_min=0, t_max=0)

    def test_empty_with_bounds_allowed(self):
        seq = ContactSequence(np.empty((0, 3), dtype=np.int64), dt=5, t_min=0, t_max=20)
        assert len(seq) == 0 and seq.node_count == 0

    def test_value_equality(self):
        a = ContactSequence.from_contacts([(0, 1, 0), (1, 2, 5)], dt=5)
        b = ContactSequence.from_contacts([(2, 1, 5), (0, 1, 0)], dt=5)
        assert a == b
        assert a != b.with_data(b.data[:1])

    def test_node_count_from_labels(self):
        seq = ContactSequence.from_contacts([(0, 1, 0)], dt=1, labels=(10, 11, 12))
        assert seq.node_count == 3


class TestWindowSpec:
    def test_defaults_filter_window_to_aggregation_window(self):
        spec = WindowSpec(t0=0, w_a=60, dt=20)
        assert spec.w_f == 60 and spec.window_ratio == 1

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(t0=0, w_a=30, dt=20),          # w_a not multiple of dt
            dict(t0=0, w_a=10, dt=20),          # w_a < dt
            dict(t0=0, w_a=40, dt=20, w_f=60),  # w_f not multiple of w_a
            dict(t0=0, w_a=40, dt=20, w_f=20),  # w_f < w_a
            dict(t0=0, w_a=20, dt=0),
        ],
    )
    def test_invalid_specs_rejected(self, kwargs):
        with pytest.raises(ValueError):
            WindowSpec(**kwargs)


class TestSnapshotGraph:
    def test_windows_must_be_consecutive(self):
        spec = WindowSpec(t0=0, w_a=10, dt=10)
        snaps = (
            Snapshot(start=0, end=10, weights={}),
            Snapshot(start=20, end=30, weights={}),
        )
        with pytest.raises(ValueError, match="consecutive"):
            SnapshotGraph(spec=spec, snapshots=snaps)

    def test_partial_only_at_tail(self):
        spec = WindowSpec(t0=0, w_a=10, dt=10)
        snaps = (
            Snapshot(start=0, end=10, weights={}, partial=True),
            Snapshot(start=10, end=20, weights={}),
        )
        with pytest.raises(ValueError, match="partial"):
            SnapshotGraph(spec=spec, snapshots=snaps)


class TestDistanceReport:
    def test_derived_fields(self):
        r = DistanceReport(fp=8, fn=2, original_contacts=10)
        assert r.distance == 10
        assert r.retention == pytest.approx(0.8)
        assert r.normalized_distance == pytest.approx(1.0)

    def test_empty_reports_zero(self):
        r = DistanceReport(fp=0, fn=0, original_contacts=0)
        assert r.distance == 0 and r.retention == 0.0 and r.normalized_distance == 0.0

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            DistanceReport(fp=-1, fn=0, original_contacts=0)


def test_sweep_cell_stochastic_needs_seed():
    report = DistanceReport(fp=0, fn=0, original_contacts=1)
    with pytest.raises(ValueError, match="seed"):
        SweepCell(
            w_a=20, w_f=20, threshold_pct=10.0, mode="stochastic", seed=None,
            stability=None, report=report, snapshot_count=1, kept_link_fraction=1.0,
        )
