"""Connected dominating set on top of the level-based dominating set.

The dominating set ``D`` comes from :class:`~dyndom.mds.LevelSolution`; a set of
connectors ``C`` (disjoint from ``D``) keeps ``D~ = D | C`` connected inside every
connected component of the graph. ``C`` is kept minimal: every connector is a
cut vertex of its component of ``G[D~]``.

Two modes share the update pipeline:

* ``"slow"`` answers "is ``v`` a cut vertex of ``G[D~]``?" by search.
* ``"fast"`` stores ``nc(v)``, the number of components of ``K(v) - v`` where
  ``K(v)`` is the component of ``v`` in ``G[D~]``, on a link-cut tree that mirrors
  the spanning forest of ``G[D~]``. Values are offset by ``n`` for vertices of
  ``D``, so a path minimum of 1 always points at a removable connector.

Per update the pipeline is: mutate the graph, push the edge into ``G[D~]`` if both
endpoints are there, update ``D`` (entries first, then exits), restore
connectivity with connectors of length at most two, restore minimality.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple, Sequence

from .errors import InternalInconsistency, NoShortConnector
from .forest import PathForest, make_connectivity
from .graph import DynGraph, EventKind, UpdateEvent
from .mds import ENTERED, DsChange, LevelSolution

__all__ = [
    "ConnectedDominatingSet",
    "Segment",
    "compute_uncovered_segments",
    "separating_vertices",
]

MODES = ("slow", "fast")


class Segment(NamedTuple):
    """Inclusive run ``start..end`` of positions along a tree path."""

    start: int
    end: int


def compute_uncovered_segments(
    path: Sequence[int],
    tree_adj: Sequence[Iterable[int]],
    adj: Sequence[Iterable[int]],
) -> list[Segment]:
    """Maximal runs of interior path positions whose vertex separates the endpoints.

    ``path`` is the forest path between two vertices of one tree, ``tree_adj``
    the forest and ``adj`` all edges of the graph the forest spans. Removing the
    vertex at interior position ``i`` leaves the pieces ``A`` (everything hanging
    off positions ``< i``), ``B`` (positions ``> i``) and one piece per subtree
    hanging off position ``i``. Non-tree edges either jump over ``i`` outright
    or link pieces; the endpoints stay connected iff ``A`` and ``B`` end up joined.
    """
    k = len(path) - 1
    if k < 2:
        return []
    proj: dict[int, int] = {}
    sub: dict[int, int] = {}
    for i, p in enumerate(path):
        proj[p] = i
        sub[p] = p
    for i, p in enumerate(path):
        for c in tree_adj[p]:
            if c in proj:
                continue
            proj[c] = i
            sub[c] = c
            stack = [c]
            while stack:
                x = stack.pop()
                for y in tree_adj[x]:
                    if y not in proj:
                        proj[y] = i
                        sub[y] = c
                        stack.append(y)

    diff = [0] * (k + 2)
    links: dict[int, list[tuple[object, object]]] = {}
    for x, i in proj.items():
        tx = tree_adj[x]
        for y in adj[x]:
            if y < x or y in tx:
                continue
            j = proj[y]
            sx, sy = sub[x], sub[y]
            if i > j:
                i2, j2, sx, sy = j, i, sy, sx
            else:
                i2, j2 = i, j
            if i2 < j2:
                if j2 - i2 >= 2:
                    diff[i2 + 1] += 1
                    diff[j2] -= 1
                if sx != path[i2]:
                    links.setdefault(i2, []).append((sx, "B"))
                if sy != path[j2]:
                    links.setdefault(j2, []).append(("A", sy))
            elif sx != sy and sx != path[i2] and sy != path[i2]:
                links.setdefault(i2, []).append((sx, sy))

    segments: list[Segment] = []
    start = -1
    span = 0
    for i in range(1, k):
        span += diff[i]
        separates = span == 0 and not _joins_sides(links.get(i, ()))
        if separates and start < 0:
            start = i
        elif not separates and start >= 0:
            segments.append(Segment(start, i - 1))
            start = -1
    if start >= 0:
        segments.append(Segment(start, k - 1))
    return segments


def _joins_sides(pairs: Iterable[tuple[object, object]]) -> bool:
    parent: dict[object, object] = {}

    def find(x: object) -> object:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return find("A") == find("B")


def separating_vertices(
    path: Sequence[int],
    tree_adj: Sequence[Iterable[int]],
    adj: Sequence[Iterable[int]],
) -> list[int]:
    return [
        path[i]
        for seg in compute_uncovered_segments(path, tree_adj, adj)
        for i in range(seg.start, seg.end + 1)
    ]


class ConnectedDominatingSet:
    """Dynamic connected dominating set (``D | C``) starting from an edgeless graph."""

    def __init__(
        self,
        graph: DynGraph | int,
        mode: str = "fast",
        backend: str = "leveled",
    ) -> None:
        if isinstance(graph, int):
            graph = DynGraph(graph)
        if graph.m:
            raise ValueError("ConnectedDominatingSet must start from an edgeless graph")
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.graph = graph
        self.mode = mode
        self.fast = mode == "fast"
        n = graph.n
        self.n = n
        self.mds = LevelSolution(graph)
        self._changes: list[DsChange] = []
        self.mds.subscribe(self._changes.append)
        self.gconn = make_connectivity(n, backend)
        self.conn = make_connectivity(n, backend)
        self.in_d = [True] * n
        self.in_dt = [True] * n
        self.connectors: set[int] = set()
        self.pf: PathForest | None = None
        if self.fast:
            # every vertex starts in D, isolated: nc = 0, stored with the +n offset
            self.pf = PathForest(n, n)
            self.conn.add_listener(self.pf)
        self.dt_size = n
        self.dt_adds = 0
        self.connector_removals = 0
        self._suspects: set[int] = set()
        self._recording = False
        self._candidates: set[int] = set()
        self._pending_paths: list[tuple[int, int]] = []

    # ---- queries ---------------------------------------------------------------

    @property
    def dominating_set(self) -> set[int]:
        return self.mds.members

    @property
    def dtilde(self) -> set[int]:
        return set(self.mds.members) | self.connectors

    def dt_components(self) -> int:
        """Number of components of ``G[D~]``."""
        return self.conn.num_components() - (self.n - self.dt_size)

    def nc(self, v: int) -> int:
        """Components of ``K(v) - v`` for ``v`` in ``D~``."""
        if not self.in_dt[v]:
            raise ValueError(f"vertex {v} is not in D~")
        if self.pf is None:
            return self._nc_search(v)
        raw = self.pf.value(v)
        return raw if v in self.connectors else raw - self.n

    def nc_table(self) -> dict[int, int]:
        """Stored values for every vertex of ``D~`` (true nc, plus ``n`` on D)."""
        out = {}
        for v in range(self.n):
            if self.in_dt[v]:
                out[v] = self.nc(v) + (0 if v in self.connectors else self.n)
        return out

    def mst_weight(self) -> int:
        """Spanning-forest weight with unit weight inside ``D~`` and ``m`` elsewhere."""
        c_dt = self.dt_components()
        c_g = self.gconn.num_components()
        m = self.graph.m
        return (self.dt_size - c_dt) + m * (self.n - c_g - self.dt_size + c_dt)

    def snapshot(self) -> dict:
        return {
            "D": frozenset(self.mds.members),
            "C": frozenset(self.connectors),
            "nc": self.nc_table() if self.fast else None,
        }

    # ---- updates -----------------------------------------------------------------

    def apply(self, event: UpdateEvent) -> None:
        u, v = event.u, event.v
        self.graph.apply(event)
        both = self.in_dt[u] and self.in_dt[v]
        self._recording = True
        if event.kind is EventKind.INSERT:
            if self.gconn.insert_edge(u, v) and not both:
                self._suspects.update((u, v))
            if both:
                self._dt_insert(u, v)
            self.mds.edge_inserted(u, v)
        else:
            self.gconn.delete_edge(u, v)
            if both:
                self._dt_delete(u, v)
            self.mds.edge_deleted(u, v)
        self._absorb_changes()
        self._restore_connectivity()
        self._recording = False
        self._restore_minimality()

    def insert_edge(self, u: int, v: int) -> None:
        self.apply(UpdateEvent.insert(u, v))

    def delete_edge(self, u: int, v: int) -> None:
        self.apply(UpdateEvent.delete(u, v))

    def reconnect_components(self, a: int, b: int | None = None) -> list[int]:
        """Join the ``G[D~]`` component of ``a`` to another one with at most two connectors.

        With ``b`` given, the other component must be the one containing ``b``.
        Returns the connectors added, in order.
        """
        if not self.in_dt[a]:
            raise ValueError(f"vertex {a} is not in D~")
        conn = self.conn
        in_dt = self.in_dt
        adj = self.graph.adj
        piece = set(conn.component(a))
        if b is not None and b in piece:
            raise ValueError(f"{a} and {b} are already connected in D~")

        def is_target(q: int) -> bool:
            return in_dt[q] and q not in piece and (b is None or conn.connected(q, b))

        frontier: list[int] = []
        seen: set[int] = set()
        for p in sorted(piece):
            for x in adj[p]:
                if not in_dt[x] and x not in seen:
                    seen.add(x)
                    frontier.append(x)
        frontier.sort()
        for x in frontier:
            if any(is_target(q) for q in adj[x]):
                self._add_connector(x)
                return [x]
        for x in frontier:
            for y in sorted(adj[x]):
                if in_dt[y] or y in seen:
                    continue
                if any(is_target(q) for q in adj[y]):
                    self._add_connector(x)
                    self._add_connector(y)
                    return [x, y]
        raise NoShortConnector(f"no connector of length <= 2 leaves the component of {a}")

    # ---- pipeline stages -----------------------------------------------------------

    def _absorb_changes(self) -> None:
        changes = self._changes[:]
        self._changes.clear()
        n = self.n
        for change in changes:
            v = change.vertex
            if change.kind == ENTERED:
                self.in_d[v] = True
                if v in self.connectors:
                    self.connectors.discard(v)
                    if self.pf is not None:
                        self.pf.add_value(v, n)
                else:
                    self.dt_adds += 1
                    self._dt_add_vertex(v)
                    self._suspects.add(v)
            else:
                self.in_d[v] = False
                if self._separates(v):
                    self.connectors.add(v)
                    if self.pf is not None:
                        self.pf.add_value(v, -n)
                else:
                    self._dt_remove_vertex(v)

    def _restore_connectivity(self) -> None:
        target = self.gconn.num_components()
        pool = self._suspects
        while self.dt_components() > target:
            if not pool:
                raise InternalInconsistency(
                    f"D~ has {self.dt_components()} components over {target} "
                    "graph components but no suspect vertex remains"
                )
            best = None
            for s in pool:
                r = self._resolve(s)
                key = (self.conn.component_size(r), r)
                if best is None or key < best[0]:
                    best = (key, s, r)
            assert best is not None
            _, s, r = best
            try:
                self.reconnect_components(r)
            except NoShortConnector:
                pool.discard(s)
        pool.clear()

    def _restore_minimality(self) -> None:
        if self.pf is None:
            changed = True
            while changed:
                changed = False
                for c in sorted(self.connectors):
                    if c in self.connectors and not self._separates(c):
                        self._remove_connector(c)
                        changed = True
            return
        pf = self.pf
        paths = self._pending_paths
        while paths:
            a, b = paths.pop()
            while self.in_dt[a] and self.in_dt[b] and self.conn.connected(a, b):
                path = pf.path(a, b)
                if len(path) < 3:
                    break
                low, arg = pf.path_min(path[1], path[-2])
                if low > 1 or arg not in self.connectors:
                    break
                self._remove_connector(arg)
        cand = self._candidates
        while cand:
            c = min(cand)
            cand.discard(c)
            if c in self.connectors and pf.value(c) <= 1:
                self._remove_connector(c)

    # ---- D~ maintenance ---------------------------------------------------------------

    def _resolve(self, s: int) -> int:
        if self.in_dt[s]:
            return s
        in_d = self.in_d
        for w in sorted(self.graph.adj[s]):
            if in_d[w]:
                return w
        raise InternalInconsistency(f"vertex {s} is not dominated")

    def _separates(self, v: int) -> bool:
        if self.pf is not None:
            raw = self.pf.value(v)
            return (raw if v in self.connectors else raw - self.n) >= 2
        return self._nc_search(v, stop_at=2) >= 2

    def _nc_search(self, v: int, stop_at: int | None = None) -> int:
        adj = self.conn.adj
        seen = {v}
        count = 0
        for s in adj[v]:
            if s in seen:
                continue
            count += 1
            if stop_at is not None and count >= stop_at:
                return count
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return count

    def _add_connector(self, x: int) -> None:
        self.dt_adds += 1
        self._dt_add_vertex(x)
        self.connectors.add(x)
        if self.pf is not None:
            self.pf.add_value(x, -self.n)

    def _remove_connector(self, c: int) -> None:
        self.connectors.discard(c)
        self.connector_removals += 1
        if self.pf is not None:
            self.pf.add_value(c, self.n)
        self._dt_remove_vertex(c)

    def _dt_add_vertex(self, v: int) -> None:
        self.in_dt[v] = True
        self.dt_size += 1
        if self.pf is not None:
            self.pf.set_value(v, self.n)
        in_dt = self.in_dt
        for w in sorted(self.graph.adj[v]):
            if in_dt[w]:
                self._dt_insert(v, w)

    def _dt_remove_vertex(self, v: int) -> None:
        for w in sorted(self.conn.adj[v]):
            self._dt_delete(v, w)
        self.in_dt[v] = False
        self.dt_size -= 1
        if self.pf is not None:
            self.pf.set_value(v, 4 * self.n)

    def _dt_insert(self, a: int, b: int) -> None:
        conn = self.conn
        pf = self.pf
        if pf is None:
            conn.insert_edge(a, b)
            return
        if conn.connected(a, b):
            path = pf.path(a, b)
            for seg in compute_uncovered_segments(path, conn.tree_adj, conn.adj):
                pf.path_add(path[seg.start], path[seg.end], -1)
                self._candidates.update(path[seg.start : seg.end + 1])
            conn.insert_edge(a, b)
            self._pending_paths.append((a, b))
        else:
            conn.insert_edge(a, b)
            pf.add_value(a, 1)
            pf.add_value(b, 1)

    def _dt_delete(self, a: int, b: int) -> None:
        result = self.conn.delete_edge(a, b)
        pf = self.pf
        if result.split:
            if self._recording:
                self._suspects.update((a, b))
            if pf is not None:
                pf.add_value(a, -1)
                pf.add_value(b, -1)
                self._candidates.update((a, b))
            return
        if pf is not None:
            path = pf.path(a, b)
            for seg in compute_uncovered_segments(path, self.conn.tree_adj, self.conn.adj):
                pf.path_add(path[seg.start], path[seg.end], 1)
