from __future__ import annotations

import random
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyndom.errors import Disconnected, DuplicateEdge, MissingEdge, SelfLoop
from dyndom.forest import (
    EulerTourForest,
    LeveledConnectivity,
    NaiveConnectivity,
    PathForest,
    make_connectivity,
)
from dyndom.forest.euler_tour import NONTREE_BIT, TREE_BIT

BACKENDS = ["naive", "leveled"]


def bfs_path(adj: list[set[int]], u: int, v: int) -> list[int] | None:
    parent = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            out = [v]
            while out[-1] != u:
                out.append(parent[out[-1]])
            return out[::-1]
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


def component_count(adj: list[set[int]]) -> int:
    parent = list(range(len(adj)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(adj)
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                count -= 1
    return count


def forest_is_valid(c) -> bool:
    edges = c.tree_edges()
    if any(not c.has_edge(u, v) for u, v in edges):
        return False
    # acyclic and spanning: |F| = n - components of the graph
    return len(edges) == c.n - component_count(c.adj) and component_count(c.tree_adj) == c.num_components()


@pytest.mark.parametrize("backend", BACKENDS)
def test_insert_reports_tree_edges(backend):
    c = make_connectivity(4, backend)
    assert c.insert_edge(0, 1) is True
    assert c.num_components() == 3
    c.insert_edge(1, 2)
    assert c.insert_edge(0, 2) is False
    assert c.is_tree_edge(0, 1) and not c.is_tree_edge(0, 2)


@pytest.mark.parametrize("backend", BACKENDS)
def test_delete_chord_and_bridge(backend):
    c = make_connectivity(3, backend)
    for u, v in [(0, 1), (1, 2), (0, 2)]:
        c.insert_edge(u, v)
    res = c.delete_edge(0, 2)
    assert not res.split and res.reconnected
    assert not res.was_tree and res.replacement is None
    # what is left is the path 0-1-2; both edges are bridges
    res = c.delete_edge(1, 2)
    assert res.split and not c.connected(1, 2)
    assert c.connected(0, 1) and c.connected(1, 1)
    assert c.num_components() == 2


@pytest.mark.parametrize("backend", BACKENDS)
def test_tree_edge_replacement(backend):
    c = make_connectivity(4, backend)
    for u, v in [(0, 1), (1, 2), (2, 3), (3, 0)]:
        c.insert_edge(u, v)
    tree = [e for e in [(0, 1), (1, 2), (2, 3)] if c.is_tree_edge(*e)]
    res = c.delete_edge(*tree[0])
    assert res.was_tree and res.replacement is not None and not res.split
    assert c.connected(0, 2) and forest_is_valid(c)


@pytest.mark.parametrize("backend", BACKENDS)
def test_connectivity_errors(backend):
    c = make_connectivity(3, backend)
    c.insert_edge(0, 1)
    with pytest.raises(DuplicateEdge):
        c.insert_edge(1, 0)
    with pytest.raises(SelfLoop):
        c.insert_edge(2, 2)
    with pytest.raises(MissingEdge):
        c.delete_edge(0, 2)


def test_unknown_backend():
    with pytest.raises(ValueError):
        make_connectivity(3, "magic")
    assert isinstance(make_connectivity(3, "naive"), NaiveConnectivity)
    assert isinstance(make_connectivity(3), LeveledConnectivity)


@pytest.mark.parametrize("backend", BACKENDS)
def test_tree_path_and_component(backend):
    c = make_connectivity(6, backend)
    for u, v in [(0, 1), (1, 2), (2, 3), (4, 5)]:
        c.insert_edge(u, v)
    assert c.tree_path(0, 3) == [0, 1, 2, 3]
    assert sorted(c.component(5)) == [4, 5]
    assert c.component_size(2) == 4
    assert c.find_root(0) == c.find_root(3) != c.find_root(4)
    with pytest.raises(Disconnected):
        c.tree_path(0, 5)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("seed", range(3))
def test_random_mix_matches_bfs(backend, seed):
    rng = random.Random(seed)
    n = 40
    c = make_connectivity(n, backend)
    mirror = PathForest(n)
    c.add_listener(mirror)
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    for step in range(3000):
        if edges and rng.random() < 0.45:
            u, v = edges.pop(rng.randrange(len(edges)))
            adj[u].discard(v)
            adj[v].discard(u)
            res = c.delete_edge(u, v)
            assert res.split == (bfs_path(adj, u, v) is None)
        else:
            u, v = rng.sample(range(n), 2)
            if v in adj[u]:
                continue
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
            c.insert_edge(u, v)
        a, b = rng.sample(range(n), 2)
        assert c.connected(a, b) == (bfs_path(adj, a, b) is not None)
        assert mirror.connected(a, b) == c.connected(a, b)
        if step % 50 == 0:
            assert c.num_components() == component_count(adj)
            assert forest_is_valid(c)
            for x in range(n):
                assert c.component_size(x) == len(c.component(x))


# ---- path forest ------------------------------------------------------------


class NaiveForest:
    def __init__(self, n: int) -> None:
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.val = [0] * n

    def path(self, u: int, v: int) -> list[int] | None:
        return bfs_path(self.adj, u, v)


def test_single_vertex_path_min():
    pf = PathForest(3)
    pf.set_value(1, 7)
    assert pf.path_min(1, 1) == (7, 1)
    assert pf.path(1, 1) == [1]


def test_p5_tie_goes_to_first_endpoint():
    pf = PathForest(5)
    for v, x in enumerate([5, 1, 7, 1, 9]):
        pf.set_value(v, x)
    for v in range(4):
        pf.link(v, v + 1)
    assert pf.path_min(0, 4) == (1, 1)
    assert pf.path_min(4, 0) == (1, 3)
    assert pf.path(4, 1) == [4, 3, 2, 1]
    pf.path_add(1, 3, 10)
    assert [pf.value(v) for v in range(5)] == [5, 11, 17, 11, 9]
    assert pf.path_min(1, 3) == (11, 1)


def test_path_forest_errors():
    pf = PathForest(4)
    pf.link(0, 1)
    pf.link(1, 2)
    with pytest.raises(ValueError):
        pf.link(0, 2)
    with pytest.raises(ValueError):
        pf.cut(0, 2)
    with pytest.raises(Disconnected):
        pf.path_min(0, 3)
    with pytest.raises(Disconnected):
        pf.lca(0, 1, 3)


def test_lca_depth_projection():
    pf = PathForest(7)
    for u, v in [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (2, 6)]:
        pf.link(u, v)
    assert pf.lca(0, 3, 5) == 1
    assert pf.lca(3, 0, 6) == 2
    assert pf.depth(0, 5) == 3
    assert pf.position_on_path(0, 3, 5) == 1
    assert pf.position_on_path(0, 3, 6) == 2
    assert pf.position_on_path(0, 3, 3) == 3


def run_path_ops(seed: int, n: int, ops: int) -> int:
    """Random link/cut/path ops against the naive forest; returns ops checked."""
    rng = random.Random(seed)
    pf = PathForest(n)
    naive = NaiveForest(n)
    edges: list[tuple[int, int]] = []
    checked = 0
    for _ in range(ops):
        r = rng.random()
        u, v = rng.sample(range(n), 2)
        p = naive.path(u, v)
        if r < 0.25:
            if p is None:
                pf.link(u, v)
                naive.adj[u].add(v)
                naive.adj[v].add(u)
                edges.append((u, v))
        elif r < 0.4:
            if edges:
                a, b = edges.pop(rng.randrange(len(edges)))
                pf.cut(a, b)
                naive.adj[a].discard(b)
                naive.adj[b].discard(a)
        elif r < 0.55:
            x = rng.randrange(-5, 6)
            pf.set_value(u, x)
            naive.val[u] = x
        elif r < 0.7:
            if p is not None:
                d = rng.randrange(-3, 4)
                pf.path_add(u, v, d)
                for x in p:
                    naive.val[x] += d
        elif r < 0.85:
            if p is None:
                assert not pf.connected(u, v)
                with pytest.raises(Disconnected):
                    pf.path_min(u, v)
            else:
                low = min(naive.val[x] for x in p)
                arg = next(x for x in p if naive.val[x] == low)
                assert pf.path_min(u, v) == (low, arg)
        else:
            if p is not None:
                assert pf.path(u, v) == p
                root = rng.randrange(n)
                w = rng.randrange(n)
                if naive.path(root, u) is not None and naive.path(root, w) is not None:
                    pu, pw = naive.path(root, u), naive.path(root, w)
                    common = [x for x, y in zip(pu, pw) if x == y]
                    assert pf.lca(root, u, w) == common[-1]
                    assert pf.depth(root, u) == len(pu) - 1
        checked += 1
        if checked % 97 == 0:
            assert all(pf.value(x) == naive.val[x] for x in range(n))
    return checked


@pytest.mark.parametrize("seed", range(3))
def test_path_forest_matches_naive_walk(seed):
    assert run_path_ops(seed, 30, 4000) == 4000


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(2, 12))
def test_path_forest_property(seed, n):
    run_path_ops(seed, n, 300)


# ---- Euler tour forest ------------------------------------------------------------


def test_euler_tour_link_cut_and_flags():
    f = EulerTourForest(6)
    f.link(0, 1)
    f.link(1, 2)
    f.link(3, 4)
    assert f.connected(0, 2) and not f.connected(2, 3)
    assert f.tree_size(0) == 3 and f.tree_size(5) == 1
    assert sorted(f.vertices(2)) == [0, 1, 2]
    f.set_flag(2, TREE_BIT, True)
    f.set_flag(0, NONTREE_BIT, True)
    assert f.find_flagged(1, TREE_BIT) == 2
    assert f.find_flagged(3, TREE_BIT) is None
    assert sorted(f.flagged(1, NONTREE_BIT | TREE_BIT)) == [0, 2]
    f.cut(1, 0)
    assert not f.connected(0, 2) and f.tree_size(1) == 2
    assert f.representative(1) == f.representative(2)
    assert not f.has_edge(0, 1) and f.has_edge(2, 1)
