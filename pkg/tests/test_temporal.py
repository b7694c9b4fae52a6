"""Temporal edge-list parsing, snapshots, and forecast evaluation."""

import io

import numpy as np
import pytest

from graphmix import (
    TemporalFormatError,
    evaluation_run,
    parse_edge_events,
    serialize_edge_events,
    snapshot_at,
)

GOOD_LINES = ["1 2 5", "2 3 6"]

# a hub "h" gaining spokes over three steps, plus side edges
STAR_LINES = [
    "h a1 1",
    "h a2 1",
    "h a3 2",
    "a1 a2 2",
    "h a4 3",
    "b1 b2 3",
]


def test_parse_basics():
    tel = parse_edge_events(GOOD_LINES)
    assert len(tel.events) == 2
    assert tel.node_ids == ("1", "2", "3")
    assert tel.t_min == 5 and tel.t_max == 6
    assert tel.rejects == ()
    np.testing.assert_array_equal(tel.edge_u, [0, 1])
    np.testing.assert_array_equal(tel.edge_v, [1, 2])


def test_parse_dedup_keeps_earliest():
    tel = parse_edge_events(["1 2 9", "2 1 3", "1 2 7"])
    assert tel.events == (("2", "1", 3),)
    assert tel.node_ids == ("2", "1")


def test_parse_rejects_self_loops_under_cap():
    lines = [f"a{i} b{i} {i}" for i in range(1, 11)] + ["z z 4"]
    tel = parse_edge_events(lines)
    assert len(tel.events) == 10
    assert len(tel.rejects) == 1
    assert "self loop" in tel.rejects[0][1]


def test_parse_rejects_bad_timestamp_under_cap():
    lines = [f"a{i} b{i} {i}" for i in range(1, 11)] + ["p q soon"]
    tel = parse_edge_events(lines)
    assert len(tel.rejects) == 1
    assert "non-integer timestamp" in tel.rejects[0][1]


def test_parse_too_many_rejects():
    with pytest.raises(TemporalFormatError):
        parse_edge_events(["1 2 3", "4 4 5", "6 7"])


def test_parse_empty_input():
    with pytest.raises(ValueError):
        parse_edge_events([])
    with pytest.raises(ValueError):
        parse_edge_events(["", "   "])
    with pytest.raises(ValueError):
        parse_edge_events(["1 1 4"])  # nothing usable survives


def test_parse_csv_format():
    tel = parse_edge_events(["u,v,t", "1,2,5", "2,3,6"], fmt="csv3col")
    assert len(tel.events) == 2
    assert tel.t_min == 5
    with pytest.raises(TemporalFormatError):
        parse_edge_events(["src,dst,when", "1,2,5"], fmt="csv3col")
    with pytest.raises(ValueError):
        parse_edge_events(GOOD_LINES, fmt="tsv")


def test_snapshot_cumulative():
    tel = parse_edge_events(STAR_LINES)
    g1 = snapshot_at(tel, 1)
    assert g1.node_count == 3 and g1.edge_count == 2
    g2 = snapshot_at(tel, 2)
    assert g2.node_count == 4 and g2.edge_count == 4
    g3 = snapshot_at(tel, 3)
    assert g3.node_count == 7 and g3.edge_count == 6
    assert int(g3.degrees().max()) == 4  # the hub


def test_snapshot_before_first_event(caplog):
    tel = parse_edge_events(STAR_LINES)
    with caplog.at_level("WARNING", logger="graphmix.temporal"):
        g = snapshot_at(tel, 0)
    assert g.node_count == 0 and g.edge_count == 0
    assert any("predates" in r.message for r in caplog.records)


def test_snapshots_nest():
    rng = np.random.default_rng(14)
    lines = []
    for _ in range(120):
        u, v = rng.integers(0, 20, 2)
        if u == v:
            continue
        lines.append(f"n{u} n{v} {rng.integers(1, 30)}")
    tel = parse_edge_events(lines)
    prev_edges: set = set()
    prev_nodes = 0
    for t in range(tel.t_min, tel.t_max + 1):
        g = snapshot_at(tel, t)
        edges = {tuple(e) for e in g.edges}
        assert prev_edges <= edges
        assert g.node_count >= prev_nodes
        prev_edges, prev_nodes = edges, g.node_count


def test_serialize_round_trip():
    tel = parse_edge_events(STAR_LINES)
    buf = io.StringIO()
    serialize_edge_events(tel, buf)
    again = parse_edge_events(buf.getvalue().splitlines())
    assert again.events == tel.events
    assert again.node_ids == tel.node_ids


def test_evaluation_horizon_zero_is_exact():
    tel = parse_edge_events(STAR_LINES)
    summary, detail = evaluation_run(tel, [1, 2], [0, 1], k=1)
    assert len(summary) == 4
    for row in summary:
        if row["horizon"] == 0:
            assert row["mape_proposed"] == 0.0
            assert row["mape_baseline"] == 0.0
    assert len(detail) == 4
    assert {r["rank"] for r in detail} == {1}


def test_evaluation_skips_out_of_range(caplog):
    tel = parse_edge_events(STAR_LINES)
    with caplog.at_level("WARNING", logger="graphmix.temporal"):
        summary, detail = evaluation_run(tel, [0, 9], [0, 5], k=1)
    assert summary == [] and detail == []
    assert sum("outside data range" in r.message for r in caplog.records) == 4


def test_evaluation_skips_oversized_k(caplog):
    tel = parse_edge_events(STAR_LINES)
    with caplog.at_level("WARNING", logger="graphmix.temporal"):
        summary, _ = evaluation_run(tel, [1], [2], k=10)
    assert summary == []
    assert any("fewer than k" in r.message for r in caplog.records)


def test_evaluation_rejects_bad_k():
    tel = parse_edge_events(STAR_LINES)
    with pytest.raises(ValueError):
        evaluation_run(tel, [1], [0], k=0)
