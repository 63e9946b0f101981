"""Minimal dominating set in O(min(Delta, sqrt(m))) amortized time per edge update.

For every vertex ``v`` the state keeps ``nd[v]``, the members of D in the
closed neighborhood of ``v``, and for members ``only_by[v]``, the closed
neighbors dominated by ``v`` alone. ``nd[v]`` never empties (domination) and
``only_by[v]`` never empties for a member (minimality).

When a vertex ``u`` loses its last dominator the replacement is ``u`` itself
if ``deg(u) <= 2*sqrt(m) + 1``; otherwise one of the first ``2*floor(sqrt(m)) + 1``
neighbors of ``u`` has degree at most ``sqrt(m)`` by averaging, and that one
is added instead.
"""

from __future__ import annotations

from collections import deque
from itertools import chain
from math import isqrt
from typing import NamedTuple

from .errors import AlreadyMember, InternalInconsistency, StillNeeded
from .graph import DynGraph, EventKind, UpdateEvent

__all__ = ["MinimalDominatingSet", "Selection", "within_selection_bound"]


class Selection(NamedTuple):
    """One replacement-dominator decision."""

    undominated: int
    chosen: int
    degree: int  # degree of ``chosen`` at selection time
    m: int  # edge count at selection time
    scanned: bool  # True when the neighbor scan was used


def within_selection_bound(degree: int, m: int) -> bool:
    """``degree <= 2*sqrt(m) + 1`` in exact integer arithmetic."""
    d = degree - 1
    return d <= 0 or d * d <= 4 * m


class MinimalDominatingSet:
    """Dynamic minimal dominating set; starts with D = V on the edgeless graph."""

    def __init__(self, graph: DynGraph | int) -> None:
        if isinstance(graph, int):
            graph = DynGraph(graph)
        if graph.m:
            raise ValueError("MinimalDominatingSet must start from an edgeless graph")
        self.graph = graph
        n = graph.n
        self.n = n
        self.in_d = [True] * n
        self.nd: list[set[int]] = [{v} for v in range(n)]
        self.only_by: dict[int, set[int]] = {v: {v} for v in range(n)}
        self.budget = [0] * n
        self.work = 0
        self.d_changes = 0
        self.selections: list[Selection] = []

    # ---- queries -----------------------------------------------------------------

    @property
    def members(self) -> set[int]:
        return set(self.only_by)

    def __contains__(self, v: int) -> bool:
        return self.in_d[v]

    def snapshot(self) -> dict:
        return {
            "in_d": frozenset(self.only_by),
            "nd": [frozenset(s) for s in self.nd],
            "only_by": {v: frozenset(s) for v, s in self.only_by.items()},
        }

    # ---- updates -----------------------------------------------------------------

    def apply(self, event: UpdateEvent) -> None:
        self.graph.apply(event)
        if event.kind is EventKind.INSERT:
            self.edge_inserted(event.u, event.v)
        else:
            self.edge_deleted(event.u, event.v)

    def insert_edge(self, u: int, v: int) -> None:
        self.apply(UpdateEvent.insert(u, v))

    def delete_edge(self, u: int, v: int) -> None:
        self.apply(UpdateEvent.delete(u, v))

    def edge_inserted(self, u: int, v: int) -> None:
        in_d = self.in_d
        self.work += 1
        if in_d[u]:
            self.budget[u] += 1
        if in_d[v]:
            self.budget[v] += 1
        if in_d[u] and in_d[v]:
            self._gain(u, v)
            if in_d[u]:
                self._gain(v, u)
        elif in_d[v]:
            self._gain(u, v)
        elif in_d[u]:
            self._gain(v, u)

    def edge_deleted(self, u: int, v: int) -> None:
        in_d = self.in_d
        self.work += 1
        if in_d[u] and in_d[v]:
            self._lose(u, v)
            self._lose(v, u)
            return
        if in_d[u]:
            u, v = v, u
        elif not in_d[v]:
            return
        # v in D, u outside
        nd_u = self.nd[u]
        was_only = len(nd_u) == 1
        nd_u.discard(v)
        if not was_only:
            if len(nd_u) == 1:
                (w,) = nd_u
                self.only_by[w].add(u)
            return
        ob = self.only_by[v]
        ob.discard(u)
        if not ob:
            self.remove_from_d(v)
        self.add_to_d(self.choose_dominator(u))

    def choose_dominator(self, u: int) -> int:
        """Pick a low-degree vertex of N[u] to dominate the undominated ``u``."""
        adj = self.graph.adj
        m = self.graph.m
        deg = len(adj[u])
        if within_selection_bound(deg, m):
            self.work += 1
            self.selections.append(Selection(u, u, deg, m, False))
            return u
        window = 2 * isqrt(m) + 1
        for i, w in enumerate(adj[u]):
            if i >= window:
                break
            self.work += 1
            dw = len(adj[w])
            if dw * dw <= m:
                self.selections.append(Selection(u, w, dw, m, True))
                return w
        raise InternalInconsistency(
            f"no neighbor of {u} with degree <= sqrt({m}) among the first {window}"
        )

    def add_to_d(self, v: int) -> None:
        if self.in_d[v]:
            raise AlreadyMember(f"vertex {v} is already in D")
        self.in_d[v] = True
        self.d_changes += 1
        nd = self.nd
        only_by = self.only_by
        adj_v = self.graph.adj[v]
        pending: deque[int] = deque()
        for u in chain((v,), adj_v):
            nd_u = nd[u]
            if len(nd_u) == 1:
                (w,) = nd_u
                ob = only_by[w]
                ob.discard(u)
                if not ob:
                    pending.append(w)
            nd_u.add(v)
        only_by[v] = {u for u in chain((v,), adj_v) if len(nd[u]) == 1}
        self.work += 2 * (len(adj_v) + 1)
        self.budget[v] = len(adj_v)
        self._cascade(pending)

    def remove_from_d(self, v: int) -> None:
        if not self.in_d[v]:
            raise ValueError(f"vertex {v} is not in D")
        if self.only_by[v]:
            raise StillNeeded(f"vertex {v} is the only dominator of {sorted(self.only_by[v])}")
        self.in_d[v] = False
        self.d_changes += 1
        del self.only_by[v]
        nd = self.nd
        adj_v = self.graph.adj[v]
        for u in chain((v,), adj_v):
            nd_u = nd[u]
            nd_u.discard(v)
            if len(nd_u) == 1:
                (w,) = nd_u
                self.only_by[w].add(u)
        self.work += len(adj_v) + 1
        self.budget[v] = 0

    # ---- internals ---------------------------------------------------------------

    def _gain(self, a: int, d: int) -> None:
        """Member ``d`` became adjacent to ``a``."""
        nd_a = self.nd[a]
        if len(nd_a) == 1:
            (w,) = nd_a
            ob = self.only_by[w]
            ob.discard(a)
            nd_a.add(d)
            if not ob:
                self.remove_from_d(w)
            return
        nd_a.add(d)

    def _lose(self, a: int, d: int) -> None:
        """Member ``d`` is no longer adjacent to ``a`` (``a`` stays dominated)."""
        nd_a = self.nd[a]
        nd_a.discard(d)
        self.only_by[d].discard(a)
        if len(nd_a) == 1:
            (w,) = nd_a
            self.only_by[w].add(a)

    def _cascade(self, pending: deque[int]) -> None:
        while pending:
            w = pending.popleft()
            if self.in_d[w] and not self.only_by[w]:
                self.remove_from_d(w)
