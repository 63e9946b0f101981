from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyndom.errors import AlreadyMember, StillNeeded
from dyndom.graph import DynGraph, generate_hub_trace, generate_trace
from dyndom.harness import generate_scan_trace
from dyndom.minimal import MinimalDominatingSet, within_selection_bound
from dyndom.oracle import is_minimal_ds, verify_minimal


def verified(s: MinimalDominatingSet) -> None:
    report = verify_minimal(s.graph, s.snapshot())
    assert report.ok, str(report)


@pytest.mark.parametrize("n", [1, 5, 10])
def test_init_all_members(n):
    s = MinimalDominatingSet(n)
    assert s.members == set(range(n))
    verified(s)


def test_requires_edgeless_start():
    g = DynGraph(2)
    g.add_edge(0, 1)
    with pytest.raises(ValueError):
        MinimalDominatingSet(g)


def test_first_endpoint_leaves_on_member_edge():
    s = MinimalDominatingSet(2)
    s.insert_edge(0, 1)
    assert s.members == {1}
    assert s.nd[0] == {1} and s.only_by[1] == {0, 1}
    verified(s)


def test_add_to_d_cascades_out_sole_dominator():
    s = MinimalDominatingSet(2)
    s.insert_edge(0, 1)
    s.add_to_d(0)
    assert s.members == {0}
    assert s.only_by[0] == {0, 1}
    verified(s)


def test_add_to_d_in_triangle():
    s = MinimalDominatingSet(3)
    s.insert_edge(1, 0)
    s.insert_edge(2, 0)
    s.insert_edge(1, 2)
    assert s.members == {0}
    s.add_to_d(1)
    assert s.members == {1}
    verified(s)


def test_add_without_cascade():
    # members 0 and 2 keep private leaves 3 and 4, so adding 1 empties nothing
    s = MinimalDominatingSet(5)
    for u, v in [(3, 0), (4, 2), (1, 0), (1, 2)]:
        s.insert_edge(u, v)
    assert s.members == {0, 2}
    s.add_to_d(1)
    assert s.members == {0, 1, 2}


def test_add_existing_member_raises():
    s = MinimalDominatingSet(3)
    with pytest.raises(AlreadyMember):
        s.add_to_d(0)


def test_remove_needed_member_raises():
    s = MinimalDominatingSet(3)
    with pytest.raises(StillNeeded):
        s.remove_from_d(1)
    s.insert_edge(0, 1)
    with pytest.raises(ValueError):
        s.remove_from_d(0)


def test_insert_makes_sole_dominator_redundant():
    # u=0 relies on w=1 alone, w itself is covered by z=4; v=2 is a member
    s = MinimalDominatingSet(5)
    s.insert_edge(0, 1)
    s.insert_edge(3, 4)
    s.insert_edge(1, 4)
    assert s.only_by[1] == {0}
    assert 2 in s.members
    s.insert_edge(0, 2)
    assert 1 not in s.members
    verified(s)


def test_delete_between_non_members_is_noop():
    s = MinimalDominatingSet(4)
    s.insert_edge(0, 2)
    s.insert_edge(1, 2)
    s.insert_edge(0, 1)
    assert {0, 1}.isdisjoint(s.members)
    snap = s.snapshot()
    s.delete_edge(0, 1)
    assert s.snapshot() == snap


def test_p2_delete_readds_endpoint():
    s = MinimalDominatingSet(2)
    s.insert_edge(0, 1)
    assert s.members == {1}
    s.delete_edge(0, 1)
    assert s.members == {0, 1}
    assert s.selections[-1].chosen == 0 and not s.selections[-1].scanned
    verified(s)


def test_choose_dominator_isolated_vertex():
    s = MinimalDominatingSet(3)
    assert s.choose_dominator(2) == 2


def test_choose_dominator_low_degree_returns_self():
    s = MinimalDominatingSet(40)
    edges = [(0, v) for v in range(1, 6)]
    edges += [(u, v) for u in range(6, 40) for v in range(u + 1, 40)][:95]
    for u, v in edges:
        s.graph.add_edge(u, v)
    assert s.graph.m == 100 and s.graph.degree(0) == 5
    assert s.choose_dominator(0) == 0


def test_choose_dominator_star_center_scans_to_a_leaf():
    s = MinimalDominatingSet(51)
    for leaf in range(1, 51):
        s.graph.add_edge(0, leaf)
    chosen = s.choose_dominator(0)
    assert chosen == next(iter(s.graph.adj[0]))
    sel = s.selections[-1]
    assert sel.scanned and sel.degree == 1 and sel.m == 50


@pytest.mark.parametrize(
    "degree, m, ok",
    [(0, 0, True), (1, 0, True), (2, 0, False), (21, 100, True), (22, 100, False), (15, 50, True), (16, 50, False)],
)
def test_selection_bound_is_exact(degree, m, ok):
    assert within_selection_bound(degree, m) is ok
    assert ok == (degree <= 2 * math.sqrt(m) + 1)


@pytest.mark.parametrize("seed", range(4))
def test_scan_trace_exercises_neighbor_scan(seed):
    s = MinimalDominatingSet(2 * 25 + 2)
    for e in generate_scan_trace(25, 600, seed):
        s.apply(e)
    verified(s)
    assert any(sel.scanned for sel in s.selections)
    assert all(within_selection_bound(sel.degree, sel.m) for sel in s.selections)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 30), pdel=st.floats(0, 0.9), seed=st.integers(0, 10**6))
def test_random_replay_minimal_and_dominating(n, pdel, seed):
    s = MinimalDominatingSet(n)
    if n < 2:
        verified(s)
        return
    for e in generate_trace(n, 150, pdel, seed):
        s.apply(e)
        verified(s)
        assert is_minimal_ds(s.graph, s.members)


def test_long_replay_n64():
    s = MinimalDominatingSet(64)
    for e in generate_trace(64, 2000, 0.5, seed=9):
        s.apply(e)
        verified(s)


@pytest.mark.parametrize("seed", range(3))
def test_work_within_budget(seed):
    trace = generate_hub_trace(100, 2000, 0.4, seed)
    s = MinimalDominatingSet(100)
    for e in trace:
        s.apply(e)
    g = s.graph
    scale = min(g.delta_max, math.sqrt(g.m_max))
    assert s.work <= 32 * (len(trace) * scale + g.n)
