"""O(log n)-approximate minimum dominating set under edge insertions and deletions.

The solution is a collection of *dominating pairs* ``(dominant, dom)`` with
``dom`` a subset of the closed neighborhood of ``dominant``. Every vertex lies
in exactly one ``dom``; the dominating set is the set of vertices heading at
least one pair. Pairs live on levels: a pair on level ``l`` must satisfy
``2**(l-10) <= |dom| <= 2**l``. The solution is kept *stable*: no vertex ``v``
sees more than ``2**l`` vertices of level ``l`` in its closed neighborhood.
A stable solution has at most ``2**10 * OPT`` pairs per level.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .errors import InternalInconsistency
from .graph import DynGraph, EventKind, UpdateEvent

__all__ = [
    "ENTERED",
    "LEFT",
    "DominatingPair",
    "DsChange",
    "DsView",
    "LevelSolution",
    "level_cap",
    "lowest_level",
    "highest_level",
]

ENTERED = "entered"
LEFT = "left"


def level_cap(n: int) -> int:
    """Largest usable level, ``ceil(log2 n) + 10``."""
    return (n - 1).bit_length() + 10


def lowest_level(c: int, l_max: int | None = None) -> int:
    """Least level ``l >= 1`` with ``c <= 2**l``."""
    if c < 1:
        raise ValueError("cardinality must be positive")
    lvl = max(1, (c - 1).bit_length())
    return lvl if l_max is None else min(lvl, l_max)


def highest_level(c: int, l_max: int | None = None) -> int:
    """Greatest level ``l`` with ``2**(l-10) <= c``."""
    if c < 1:
        raise ValueError("cardinality must be positive")
    lvl = c.bit_length() - 1 + 10
    if l_max is not None:
        lvl = min(lvl, l_max)
    return max(1, lvl)


def _lower_bound_ok(card: int, level: int) -> bool:
    # 2**(level-10) <= card; vacuous below level 10 since card >= 1
    return level <= 10 or card >= 1 << (level - 10)


@dataclass
class DominatingPair:
    id: int
    dominant: int
    dom: set[int]
    level: int


class DsChange(NamedTuple):
    kind: str  # ENTERED or LEFT
    vertex: int


@dataclass(frozen=True)
class DsView:
    members: frozenset[int]
    multiplicity: dict[int, int]


class LevelSolution:
    """Stable level-based dominating pairs over a :class:`DynGraph`.

    Drive it either with :meth:`apply` (mutates the graph, then updates), or
    mutate a shared graph yourself and call :meth:`edge_inserted` /
    :meth:`edge_deleted` right after.

    Counters: ``level_changes`` counts vertex re-placements (a vertex moved into
    a new pair, or carried along when its pair is moved to another level);
    ``d_changes`` counts net entries/exits of the dominating set per update.
    """

    def __init__(self, graph: DynGraph | int) -> None:
        if isinstance(graph, int):
            graph = DynGraph(graph)
        if graph.m:
            raise ValueError("LevelSolution must start from an edgeless graph")
        self.graph = graph
        n = graph.n
        self.n = n
        self.l_max = level_cap(n)
        self._bound = [1 << lvl for lvl in range(self.l_max + 1)]
        self.pairs: dict[int, DominatingPair] = {}
        self.owner: list[int] = list(range(n))
        self.level_of: list[int] = [1] * n
        self.cnt: list[list[int]] = [[0] * (self.l_max + 1) for _ in range(n)]
        self.queue: deque[tuple[int, int]] = deque()
        self.multiplicity: list[int] = [1] * n
        for v in range(n):
            self.pairs[v] = DominatingPair(v, v, {v}, 1)
            self.cnt[v][1] = 1
        self._next_id = n
        self._members: set[int] = set(range(n))
        self._touched: set[int] = set()
        self._listeners: list[Callable[[DsChange], None]] = []
        self.level_changes = 0
        self.d_changes = 0
        self.stabilize_steps = 0

    # ---- public API ----------------------------------------------------------

    def subscribe(self, listener: Callable[[DsChange], None]) -> None:
        """Register a callback receiving net membership changes after each update."""
        self._listeners.append(listener)

    def apply(self, event: UpdateEvent) -> list[DsChange]:
        self.graph.apply(event)
        if event.kind is EventKind.INSERT:
            return self.edge_inserted(event.u, event.v)
        return self.edge_deleted(event.u, event.v)

    def insert_edge(self, u: int, v: int) -> list[DsChange]:
        return self.apply(UpdateEvent.insert(u, v))

    def delete_edge(self, u: int, v: int) -> list[DsChange]:
        return self.apply(UpdateEvent.delete(u, v))

    def edge_inserted(self, u: int, v: int) -> list[DsChange]:
        lu, lv = self.level_of[u], self.level_of[v]
        self._bump(u, lv, 1)
        self._bump(v, lu, 1)
        self.stabilize()
        return self._emit()

    def edge_deleted(self, u: int, v: int) -> list[DsChange]:
        lu, lv = self.level_of[u], self.level_of[v]
        self.cnt[u][lv] -= 1
        self.cnt[v][lu] -= 1
        for a, b in ((u, v), (v, u)):
            if self.pairs[self.owner[a]].dominant == b:
                # a lost its dominator: it now dominates itself at level 1
                self._create_pair(a, [a], 1)
        self.stabilize()
        return self._emit()

    def stabilize(self) -> None:
        """Fix every stability violation recorded in the queue."""
        cap = 64 * (self.n + len(self.queue))
        steps = 0
        adj = self.graph.adj
        while self.queue:
            v, lvl = self.queue.popleft()
            c = self.cnt[v][lvl]
            if c <= self._bound[lvl]:
                continue
            steps += 1
            if steps > cap:
                raise InternalInconsistency(f"stabilize exceeded {cap} iterations")
            members = [w for w in adj[v] if self.level_of[w] == lvl]
            if self.level_of[v] == lvl:
                members.append(v)
            if len(members) != c:
                raise InternalInconsistency(
                    f"counter cnt[{v}][{lvl}]={c} disagrees with neighborhood ({len(members)})"
                )
            self._create_pair(v, members, lowest_level(c, self.l_max))
        self.stabilize_steps += steps

    def ds_view(self) -> DsView:
        mult = {v: k for v, k in enumerate(self.multiplicity) if k}
        return DsView(frozenset(mult), mult)

    @property
    def members(self) -> set[int]:
        """Current dominating set (live; do not mutate)."""
        return self._members

    def pairs_at_level(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.pairs.values():
            out[p.level] = out.get(p.level, 0) + 1
        return out

    def snapshot(self) -> dict:
        """Plain-data copy of the state, for the oracles."""
        return {
            "n": self.n,
            "l_max": self.l_max,
            "pairs": [(p.dominant, frozenset(p.dom), p.level) for p in self.pairs.values()],
            "level_of": list(self.level_of),
            "cnt": [row[:] for row in self.cnt],
        }

    # ---- internals -------------------------------------------------------------

    def _bump(self, w: int, lvl: int, delta: int) -> None:
        row = self.cnt[w]
        row[lvl] += delta
        if delta > 0 and row[lvl] > self._bound[lvl]:
            self.queue.append((w, lvl))

    def _relevel(self, x: int, new: int) -> None:
        self.level_changes += 1
        old = self.level_of[x]
        if old == new:
            return
        self.level_of[x] = new
        bound = self._bound[new]
        queue = self.queue
        cnt = self.cnt
        for w in self.graph.adj[x]:
            row = cnt[w]
            row[old] -= 1
            row[new] += 1
            if row[new] > bound:
                queue.append((w, new))
        row = cnt[x]
        row[old] -= 1
        row[new] += 1
        if row[new] > bound:
            queue.append((x, new))

    def _create_pair(self, dominant: int, members: Iterable[int], level: int) -> None:
        pid = self._next_id
        self._next_id += 1
        dom = set(members)
        self.pairs[pid] = DominatingPair(pid, dominant, dom, level)
        self.multiplicity[dominant] += 1
        self._touched.add(dominant)
        affected: dict[int, DominatingPair] = {}
        for x in dom:
            old = self.pairs[self.owner[x]]
            old.dom.discard(x)
            affected[old.id] = old
            self.owner[x] = pid
            self._relevel(x, level)
        for p in affected.values():
            if not p.dom:
                del self.pairs[p.id]
                self.multiplicity[p.dominant] -= 1
                self._touched.add(p.dominant)
            elif not _lower_bound_ok(len(p.dom), p.level):
                p.level = highest_level(len(p.dom), self.l_max)
                for x in p.dom:
                    self._relevel(x, p.level)

    def _emit(self) -> list[DsChange]:
        entered: list[int] = []
        left: list[int] = []
        for v in self._touched:
            now = self.multiplicity[v] > 0
            if now and v not in self._members:
                entered.append(v)
            elif not now and v in self._members:
                left.append(v)
        self._touched.clear()
        changes = [DsChange(ENTERED, v) for v in sorted(entered)]
        changes += [DsChange(LEFT, v) for v in sorted(left)]
        self._members.update(entered)
        self._members.difference_update(left)
        self.d_changes += len(changes)
        for change in changes:
            for listener in self._listeners:
                listener(change)
        return changes
