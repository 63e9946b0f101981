"""Fully dynamic connectivity with an explicit spanning forest.

Two interchangeable backends share one interface:

* :class:`NaiveConnectivity` keeps component labels and, when a tree edge is
  deleted, scans the smaller side's incident edges for a replacement
  (O(m) worst case per deletion).
* :class:`LeveledConnectivity` is the Holm-de Lichtenberg-Thorup structure:
  every edge has a level, ``F_i`` is the forest of tree edges with level
  ``>= i`` stored as an Euler-tour forest, and a replacement search at level
  ``i`` promotes the searched edges so each edge is charged O(log n) times.

Both notify registered listeners of every link/cut applied to the spanning
forest, so a :class:`~dyndom.forest.PathForest` can mirror it.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections import deque
from typing import NamedTuple, Protocol

from ..errors import Disconnected, DuplicateEdge, MissingEdge, SelfLoop
from .euler_tour import NONTREE_BIT, TREE_BIT, EulerTourForest

__all__ = [
    "Deletion",
    "DynamicConnectivity",
    "ForestListener",
    "LeveledConnectivity",
    "NaiveConnectivity",
    "make_connectivity",
]


class Deletion(NamedTuple):
    was_tree: bool
    replacement: tuple[int, int] | None
    split: bool

    @property
    def reconnected(self) -> bool:
        return not self.split


class ForestListener(Protocol):
    def link(self, u: int, v: int) -> None: ...

    def cut(self, u: int, v: int) -> None: ...


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class DynamicConnectivity(ABC):
    """Edge set over a fixed vertex universe plus a spanning forest ``F``."""

    name = "abstract"

    def __init__(self, n: int) -> None:
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.tree_adj: list[set[int]] = [set() for _ in range(n)]
        self.num_edges = 0
        self._components = n
        self._listeners: list[ForestListener] = []

    # ---- shared bookkeeping -------------------------------------------------

    def add_listener(self, listener: ForestListener) -> None:
        self._listeners.append(listener)

    def _link(self, u: int, v: int) -> None:
        self.tree_adj[u].add(v)
        self.tree_adj[v].add(u)
        for listener in self._listeners:
            listener.link(u, v)

    def _cut(self, u: int, v: int) -> None:
        self.tree_adj[u].discard(v)
        self.tree_adj[v].discard(u)
        for listener in self._listeners:
            listener.cut(u, v)

    def _check_new(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLoop(f"self-loop on vertex {u}")
        if v in self.adj[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) already tracked")

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_tree_edge(self, u: int, v: int) -> bool:
        return v in self.tree_adj[u]

    def num_components(self) -> int:
        return self._components

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.tree_adj[u] if u < v]

    def tree_path(self, u: int, v: int) -> list[int]:
        """Vertices of the ``F``-path from ``u`` to ``v`` (BFS over forest edges)."""
        if u == v:
            return [u]
        parent = {u: u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self.tree_adj[x]:
                if y not in parent:
                    parent[y] = x
                    if y == v:
                        path = [v]
                        while path[-1] != u:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return path
                    queue.append(y)
        raise Disconnected(f"{u} and {v} are in different trees")

    def component(self, v: int) -> list[int]:
        """Vertices connected to ``v``, by a walk over forest edges."""
        seen = {v}
        order = [v]
        i = 0
        while i < len(order):
            for y in self.tree_adj[order[i]]:
                if y not in seen:
                    seen.add(y)
                    order.append(y)
            i += 1
        return order

    # ---- backend contract ------------------------------------------------------

    @abstractmethod
    def insert_edge(self, u: int, v: int) -> bool:
        """Track edge (u, v). Returns True when it joined two trees of ``F``."""

    @abstractmethod
    def delete_edge(self, u: int, v: int) -> Deletion: ...

    @abstractmethod
    def connected(self, u: int, v: int) -> bool: ...

    @abstractmethod
    def component_size(self, v: int) -> int: ...

    @abstractmethod
    def find_root(self, v: int) -> int:
        """Canonical vertex of the component of ``v``; stable until the next update."""


class NaiveConnectivity(DynamicConnectivity):
    name = "naive"

    def __init__(self, n: int) -> None:
        super().__init__(n)
        self.label = list(range(n))
        self.members: dict[int, set[int]] = {v: {v} for v in range(n)}
        self._next_label = n

    def connected(self, u: int, v: int) -> bool:
        return self.label[u] == self.label[v]

    def component_size(self, v: int) -> int:
        return len(self.members[self.label[v]])

    def find_root(self, v: int) -> int:
        return min(self.members[self.label[v]])

    def insert_edge(self, u: int, v: int) -> bool:
        self._check_new(u, v)
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.num_edges += 1
        lu, lv = self.label[u], self.label[v]
        if lu == lv:
            return False
        big, small = (lu, lv) if len(self.members[lu]) >= len(self.members[lv]) else (lv, lu)
        moved = self.members.pop(small)
        for x in moved:
            self.label[x] = big
        self.members[big] |= moved
        self._components -= 1
        self._link(u, v)
        return True

    def delete_edge(self, u: int, v: int) -> Deletion:
        if v not in self.adj[u]:
            raise MissingEdge(f"edge ({u}, {v}) not tracked")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.num_edges -= 1
        if v not in self.tree_adj[u]:
            return Deletion(False, None, False)
        self._cut(u, v)
        side_u = self.component(u)
        total = len(self.members[self.label[u]])
        if 2 * len(side_u) <= total:
            side, other_root = side_u, v
        else:
            side, other_root = self.component(v), u
        in_side = set(side)
        for x in side:
            for y in self.adj[x]:
                if y not in in_side:
                    self._link(x, y)
                    return Deletion(True, (x, y), False)
        old = self.label[other_root]
        new = self._next_label
        self._next_label += 1
        for x in side:
            self.label[x] = new
        self.members[old] -= in_side
        self.members[new] = in_side
        self._components += 1
        return Deletion(True, None, True)


class LeveledConnectivity(DynamicConnectivity):
    name = "leveled"

    def __init__(self, n: int) -> None:
        super().__init__(n)
        self.max_level = max(0, n.bit_length() - 1)
        levels = self.max_level + 1
        self.forests = [EulerTourForest(n) for _ in range(levels)]
        self.level: dict[tuple[int, int], int] = {}
        # incident tree / non-tree edges bucketed by exact level
        self.tree_at: list[list[set[int]]] = [[set() for _ in range(n)] for _ in range(levels)]
        self.nontree_at: list[list[set[int]]] = [[set() for _ in range(n)] for _ in range(levels)]

    def connected(self, u: int, v: int) -> bool:
        return self.forests[0].connected(u, v)

    def component_size(self, v: int) -> int:
        return self.forests[0].tree_size(v)

    def find_root(self, v: int) -> int:
        return self.forests[0].representative(v)

    # ---- bucket helpers --------------------------------------------------------

    def _add_tree(self, u: int, v: int, lvl: int) -> None:
        self.tree_at[lvl][u].add(v)
        self.tree_at[lvl][v].add(u)
        f = self.forests[lvl]
        f.set_flag(u, TREE_BIT, True)
        f.set_flag(v, TREE_BIT, True)

    def _drop_tree(self, u: int, v: int, lvl: int) -> None:
        bucket = self.tree_at[lvl]
        bucket[u].discard(v)
        bucket[v].discard(u)
        f = self.forests[lvl]
        f.set_flag(u, TREE_BIT, bool(bucket[u]))
        f.set_flag(v, TREE_BIT, bool(bucket[v]))

    def _add_nontree(self, u: int, v: int, lvl: int) -> None:
        self.nontree_at[lvl][u].add(v)
        self.nontree_at[lvl][v].add(u)
        f = self.forests[lvl]
        f.set_flag(u, NONTREE_BIT, True)
        f.set_flag(v, NONTREE_BIT, True)

    def _drop_nontree(self, u: int, v: int, lvl: int) -> None:
        bucket = self.nontree_at[lvl]
        bucket[u].discard(v)
        bucket[v].discard(u)
        f = self.forests[lvl]
        f.set_flag(u, NONTREE_BIT, bool(bucket[u]))
        f.set_flag(v, NONTREE_BIT, bool(bucket[v]))

    # ---- updates -----------------------------------------------------------------

    def insert_edge(self, u: int, v: int) -> bool:
        self._check_new(u, v)
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.num_edges += 1
        self.level[_key(u, v)] = 0
        if self.forests[0].connected(u, v):
            self._add_nontree(u, v, 0)
            return False
        self.forests[0].link(u, v)
        self._add_tree(u, v, 0)
        self._components -= 1
        self._link(u, v)
        return True

    def delete_edge(self, u: int, v: int) -> Deletion:
        if v not in self.adj[u]:
            raise MissingEdge(f"edge ({u}, {v}) not tracked")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.num_edges -= 1
        lvl = self.level.pop(_key(u, v))
        if v not in self.tree_adj[u]:
            self._drop_nontree(u, v, lvl)
            return Deletion(False, None, False)
        self._drop_tree(u, v, lvl)
        for i in range(lvl + 1):
            self.forests[i].cut(u, v)
        self._cut(u, v)
        for i in range(lvl, -1, -1):
            found = self._replace(u, v, i)
            if found is not None:
                return Deletion(True, found, False)
        self._components += 1
        return Deletion(True, None, True)

    def _replace(self, u: int, v: int, i: int) -> tuple[int, int] | None:
        f = self.forests[i]
        small = u if f.tree_size(u) <= f.tree_size(v) else v
        # push the small side's level-i tree edges up one level
        if i < self.max_level:
            up = self.forests[i + 1]
            for x in f.flagged(small, TREE_BIT):
                for y in list(self.tree_at[i][x]):
                    self._drop_tree(x, y, i)
                    self._add_tree(x, y, i + 1)
                    self.level[_key(x, y)] = i + 1
                    up.link(x, y)
        while True:
            x = f.find_flagged(small, NONTREE_BIT)
            if x is None:
                return None
            for y in list(self.nontree_at[i][x]):
                self._drop_nontree(x, y, i)
                if f.connected(x, y):
                    if i >= self.max_level:
                        raise AssertionError("leveled connectivity exceeded its level cap")
                    self._add_nontree(x, y, i + 1)
                    self.level[_key(x, y)] = i + 1
                    continue
                self._add_tree(x, y, i)
                self.level[_key(x, y)] = i
                for j in range(i + 1):
                    self.forests[j].link(x, y)
                self._link(x, y)
                return (x, y)


def make_connectivity(n: int, backend: str = "leveled") -> DynamicConnectivity:
    if backend == "naive":
        return NaiveConnectivity(n)
    if backend == "leveled":
        return LeveledConnectivity(n)
    raise ValueError(f"unknown connectivity backend {backend!r}")
