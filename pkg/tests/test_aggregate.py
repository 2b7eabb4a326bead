import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snapagg import (
    ContactSequence,
    WindowSpec,
    aggregate,
    merge_pairwise,
    read_snapshot_graph,
    window_partition,
    write_snapshot_graph,
)

from .conftest import contact_sequences, sequences_with_specs


class TestWindowPartition:
    def test_partial_tail_dropped_by_default(self):
        spec = WindowSpec(t0=0, w_a=30, dt=1)
        wins = window_partition(0, 99, spec)
        assert [(w.start, w.end) for w in wins] == [(0, 30), (30, 60), (60, 90)]
        assert not any(w.partial for w in wins)

    def test_partial_tail_kept_when_requested(self):
        spec = WindowSpec(t0=0, w_a=30, dt=1, include_partial_tail=True)
        wins = window_partition(0, 99, spec)
        assert [(w.start, w.end) for w in wins][-1] == (90, 120)
        assert wins[-1].partial and not wins[-2].partial

    def test_span_shorter_than_window_gives_no_windows(self):
        spec = WindowSpec(t0=0, w_a=30, dt=1)
        assert window_partition(0, 10, spec) == []

    def test_exactly_covered_tail_is_full(self):
        spec = WindowSpec(t0=0, w_a=30, dt=10)
        wins = window_partition(0, 50, spec)
        assert [(w.start, w.end, w.partial) for w in wins] == [
            (0, 30, False),
            (30, 60, False),
        ]

    def test_origin_after_data_fails(self):
        spec = WindowSpec(t0=100, w_a=30, dt=1)
        with pytest.raises(ValueError):
            window_partition(100, 50, spec)
        with pytest.raises(ValueError):
            window_partition(50, 200, spec)


class TestAggregate:
    def test_hand_projection(self):
        seq = ContactSequence.from_contacts([(0, 1, 0), (0, 1, 20), (1, 2, 40)], dt=20)
        spec = WindowSpec(t0=0, w_a=40, dt=20, include_partial_tail=True)
        g = aggregate(seq, spec)
        assert len(g) == 2
        assert dict(g.snapshots[0].weights) == {(0, 1): 2}
        assert dict(g.snapshots[1].weights) == {(1, 2): 1}
        assert g.snapshots[1].partial

    def test_tail_contacts_ignored_by_default(self):
        seq = ContactSequence.from_contacts([(0, 1, 0), (0, 1, 20), (1, 2, 40)], dt=20)
        g = aggregate(seq, WindowSpec(t0=0, w_a=40, dt=20))
        assert len(g) == 1
        assert dict(g.snapshots[0].weights) == {(0, 1): 2}

    def test_empty_windows_retained(self):
        seq = ContactSequence.from_contacts(
            [(0, 1, 0), (0, 1, 90)], dt=10, t_min=0, t_max=90
        )
        g = aggregate(seq, WindowSpec(t0=0, w_a=50, dt=10))
        assert len(g) == 2
        assert dict(g.snapshots[0].weights) == {(0, 1): 1}

    def test_gap_in_the_middle_keeps_empty_snapshot(self):
        seq = ContactSequence.from_contacts(
            [(0, 1, 0), (0, 1, 20)], dt=10, t_min=0, t_max=20
        )
        g = aggregate(seq, WindowSpec(t0=0, w_a=10, dt=10))
        assert [s.edge_count for s in g.snapshots] == [1, 0, 1]

    def test_resolution_windows_have_unit_weights(self):
        seq = ContactSequence.from_contacts(
            [(0, 1, 0), (1, 2, 0), (0, 2, 10), (0, 1, 30)], dt=10
        )
        g = aggregate(seq, WindowSpec(t0=0, w_a=10, dt=10))
        for snap in g.snapshots:
            assert all(nc == 1 for nc in snap.weights.values())

    def test_dt_mismatch_rejected(self):
        seq = ContactSequence.from_contacts([(0, 1, 0)], dt=10)
        with pytest.raises(ValueError, match="dt"):
            aggregate(seq, WindowSpec(t0=0, w_a=20, dt=20))

    def test_empty_sequence_without_bounds_gives_no_snapshots(self):
        seq = ContactSequence.from_contacts([], dt=10)
        g = aggregate(seq, WindowSpec(t0=0, w_a=10, dt=10))
        assert len(g) == 0

    @given(sequences_with_specs())
    @settings(max_examples=100)
    def test_weight_sum_equals_covered_contacts(self, seq_spec):
        seq, spec = seq_spec
        g = aggregate(seq, spec)
        total = sum(sum(s.weights.values()) for s in g.snapshots)
        end = g.snapshots[-1].end if g.snapshots else spec.t0
        covered = int((seq.t < end).sum())
        assert total == covered

    @given(sequences_with_specs())
    @settings(max_examples=100)
    def test_weights_bounded_by_window_steps(self, seq_spec):
        seq, spec = seq_spec
        g = aggregate(seq, spec)
        for snap in g.snapshots:
            for nc in snap.weights.values():
                assert 1 <= nc <= spec.steps_per_window

    @given(contact_sequences(max_steps=16), st.integers(1, 4))
    @settings(max_examples=80)
    def test_pairwise_merge_matches_double_window(self, seq, w_steps):
        # trim the observation span to a whole number of 2*w_a windows so
        # both routes see the same full-window grid
        w_a = w_steps * seq.dt
        span = seq.t_max - seq.t_min + seq.dt
        pairs = span // (2 * w_a)
        if pairs == 0:
            return
        t_hi = seq.t_min + pairs * 2 * w_a - seq.dt
        data = seq.data[seq.t <= t_hi]
        trimmed = ContactSequence(
            data=data, dt=seq.dt, t_min=seq.t_min, t_max=t_hi, labels=seq.labels
        )
        fine = aggregate(trimmed, WindowSpec(t0=trimmed.t_min, w_a=w_a, dt=seq.dt))
        coarse = aggregate(
            trimmed, WindowSpec(t0=trimmed.t_min, w_a=2 * w_a, dt=seq.dt)
        )
        assert merge_pairwise(fine) == coarse


class TestSnapshotGraphSerialization:
    @given(sequences_with_specs(min_contacts=1))
    @settings(max_examples=60)
    def test_round_trip(self, seq_spec):
        seq, spec = seq_spec
        g = aggregate(seq, spec)
        buf = io.StringIO()
        write_snapshot_graph(g, buf)
        buf.seek(0)
        assert read_snapshot_graph(buf) == g

    def test_format_shape(self):
        seq = ContactSequence.from_contacts([(0, 1, 0), (0, 1, 20), (1, 2, 40)], dt=20)
        g = aggregate(seq, WindowSpec(t0=0, w_a=40, dt=20, include_partial_tail=True))
        buf = io.StringIO()
        write_snapshot_graph(g, buf)
        lines = buf.getvalue().splitlines()
        assert "snapshot 0 40 full" in lines
        assert "snapshot 40 80 partial" in lines
        assert "0 1 2" in lines
