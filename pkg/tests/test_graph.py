from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyndom.errors import (
    DuplicateEdge,
    MissingEdge,
    ParseError,
    SelfLoop,
    VertexOutOfRange,
)
from dyndom.graph import (
    DynGraph,
    EventKind,
    UpdateEvent,
    UpdateTrace,
    generate_connected_trace,
    generate_hub_trace,
    generate_trace,
    load_trace,
    parse_trace,
    replay,
    save_trace,
    serialize_trace,
)
from dyndom.oracle import components


def test_graph_basic_updates():
    g = DynGraph(4)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    assert g.has_edge(1, 0) and g.m == 2
    assert g.degree(1) == 2 and g.neighbors(1) == {0, 2}
    g.remove_edge(0, 1)
    assert not g.has_edge(0, 1) and g.m == 1
    assert g.m_max == 2 and g.delta_max == 2
    assert sorted(g.edges()) == [(1, 2)]


@pytest.mark.parametrize(
    "op, args, exc",
    [
        ("add_edge", (1, 1), SelfLoop),
        ("add_edge", (0, 4), VertexOutOfRange),
        ("add_edge", (-1, 2), VertexOutOfRange),
        ("remove_edge", (0, 1), MissingEdge),
    ],
)
def test_graph_rejects_invalid(op, args, exc):
    g = DynGraph(4)
    with pytest.raises(exc):
        getattr(g, op)(*args)


def test_duplicate_edge_rejected_in_either_orientation():
    g = DynGraph(3)
    g.add_edge(0, 2)
    with pytest.raises(DuplicateEdge):
        g.add_edge(2, 0)


def test_graph_needs_a_vertex():
    with pytest.raises(ValueError):
        DynGraph(0)


def test_copy_is_independent():
    g = DynGraph(3)
    g.add_edge(0, 1)
    h = g.copy()
    h.add_edge(1, 2)
    assert g.m == 1 and h.m == 2


def test_parse_and_serialize_exact():
    text = "n 4\n+ 0 1\n+ 1 2\n- 0 1\n"
    trace = parse_trace(text)
    assert trace.n == 4
    assert trace.events == [
        UpdateEvent(EventKind.INSERT, 0, 1),
        UpdateEvent.insert(1, 2),
        UpdateEvent.delete(0, 1),
    ]
    assert serialize_trace(trace) == text
    assert parse_trace(text.encode()) == trace


def test_comments_are_skipped():
    trace = parse_trace("# header comment\nn 3\n# mid\n+ 0 2\n")
    assert trace.events == [UpdateEvent.insert(0, 2)]
    assert serialize_trace(trace) == "n 3\n+ 0 2\n"


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("n 3\n+ 0 1", 2),  # no trailing newline
        ("n 3\n+ 0  1\n", 2),  # double space
        ("n 3\n+ 0 1\n* 1 2\n", 3),
        ("n 3\n+ 01 2\n", 2),  # leading zero
        ("n 0\n", 1),
        ("x 3\n", 1),
        ("n 3\n+ 0 3\n", 2),  # out of range
        ("n 3\n+ 0 1\n+ 1 0\n", 3),  # duplicate
        ("n 3\n- 0 1\n", 2),  # missing
        ("n 3\n+ 2 2\n", 2),  # self-loop
        ("# only comments\n", 1),
    ],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_trace(text)
    assert info.value.line == line


def test_parse_rejects_bad_utf8():
    with pytest.raises(ParseError):
        parse_trace(b"n 2\n\xff\n")


def test_save_load_roundtrip(tmp_path):
    trace = generate_trace(10, 200, 0.4, seed=3)
    path = tmp_path / "t.trace"
    save_trace(trace, path)
    assert load_trace(path) == trace
    assert path.read_bytes() == serialize_trace(trace).encode()


def test_prefix():
    trace = generate_trace(6, 20, 0.3, seed=1)
    assert trace.prefix(5).events == trace.events[:5]
    assert len(trace.prefix(5)) == 5


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(2, 25),
    steps=st.integers(0, 300),
    pdel=st.floats(0, 0.95),
    seed=st.integers(0, 2**32),
)
def test_generated_traces_are_valid_and_deterministic(n, steps, pdel, seed):
    trace = generate_trace(n, steps, pdel, seed)
    assert len(trace) == steps
    assert trace == generate_trace(n, steps, pdel, seed)
    replay(trace)  # raises on any invalid event
    assert parse_trace(serialize_trace(trace)) == trace


def test_insert_only_when_pdel_zero():
    trace = generate_trace(8, 28, 0.0, seed=0)
    assert all(e.kind is EventKind.INSERT for e in trace)
    assert replay(trace).m == 28


def test_saturated_graph_forces_delete():
    trace = generate_trace(3, 5, 0.0, seed=0)
    assert [e.kind for e in trace][3] is EventKind.DELETE


def test_hub_trace_concentrates_degree():
    trace = generate_hub_trace(40, 300, 0.2, seed=2, hubs=2)
    g = replay(trace)
    top = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    assert top[0] >= 20


@pytest.mark.parametrize("seed", range(10))
def test_connected_trace_is_connected(seed):
    trace = generate_connected_trace(12, 5, seed)
    assert all(e.kind is EventKind.INSERT for e in trace)
    g = replay(trace)
    assert len(components(g)) == 1
    assert g.m == 11 + 5


@pytest.mark.parametrize("bad", [(1, 10, 0.1), (5, 10, 1.0), (5, 10, -0.1)])
def test_generator_argument_checks(bad):
    with pytest.raises(ValueError):
        generate_trace(*bad, seed=0)


def test_trace_dataclass_iteration():
    t = UpdateTrace(3, [UpdateEvent.insert(0, 1)])
    assert list(t) == t.events
    assert str(t.events[0]) == "+ 0 1"
