"""Fixed-universe dynamic graph, edge events, and the line-oriented trace format.

Trace text looks like::

    n 4
    + 0 1
    + 1 2
    - 0 1

The header line gives the vertex count; every further line is one insertion
(``+``) or deletion (``-``). Lines starting with ``#`` are comments. Vertex ids
are 0-based decimals separated by single spaces and the text must end with a
newline. :func:`serialize_trace` emits exactly this form (without comments),
so ``serialize_trace(parse_trace(text)) == text`` for comment-free input.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

from .errors import (
    DuplicateEdge,
    GraphError,
    MissingEdge,
    ParseError,
    SelfLoop,
    VertexOutOfRange,
)

__all__ = [
    "DynGraph",
    "EventKind",
    "UpdateEvent",
    "UpdateTrace",
    "parse_trace",
    "serialize_trace",
    "load_trace",
    "save_trace",
    "generate_trace",
    "generate_hub_trace",
    "replay",
    "trace_from_edges",
    "generate_connected_trace",
]


class EventKind(str, enum.Enum):
    INSERT = "+"
    DELETE = "-"


class UpdateEvent(NamedTuple):
    kind: EventKind
    u: int
    v: int

    @classmethod
    def insert(cls, u: int, v: int) -> "UpdateEvent":
        return cls(EventKind.INSERT, u, v)

    @classmethod
    def delete(cls, u: int, v: int) -> "UpdateEvent":
        return cls(EventKind.DELETE, u, v)

    def __str__(self) -> str:
        return f"{self.kind.value} {self.u} {self.v}"


@dataclass
class UpdateTrace:
    n: int
    events: list[UpdateEvent] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[UpdateEvent]:
        return iter(self.events)

    def prefix(self, k: int) -> "UpdateTrace":
        return UpdateTrace(self.n, self.events[:k])


class DynGraph:
    """Simple undirected graph over vertices ``0..n-1`` mutated one edge at a time.

    ``m`` is the current edge count; ``m_max`` and ``delta_max`` are the running
    maxima of the edge count and of the maximum degree over the whole history.
    """

    __slots__ = ("n", "adj", "m", "m_max", "delta_max")

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        self.m_max = 0
        self.delta_max = 0

    def _check(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside vertex range [0, {self.n})")
        if u == v:
            raise SelfLoop(f"self-loop on vertex {u}")

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> set[int]:
        """Open neighborhood. The returned set is live; do not mutate it."""
        return self.adj[v]

    def add_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v in self.adj[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) already present")
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m += 1
        if self.m > self.m_max:
            self.m_max = self.m
        d = max(len(self.adj[u]), len(self.adj[v]))
        if d > self.delta_max:
            self.delta_max = d

    def remove_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v not in self.adj[u]:
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1

    def apply(self, event: UpdateEvent) -> None:
        if event.kind is EventKind.INSERT:
            self.add_edge(event.u, event.v)
        else:
            self.remove_edge(event.u, event.v)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def copy(self) -> "DynGraph":
        g = DynGraph(self.n)
        g.adj = [set(s) for s in self.adj]
        g.m, g.m_max, g.delta_max = self.m, self.m_max, self.delta_max
        return g

    def __repr__(self) -> str:
        return f"DynGraph(n={self.n}, m={self.m})"


def replay(trace: UpdateTrace) -> DynGraph:
    """Apply every event of ``trace`` to an empty graph and return the result."""
    g = DynGraph(trace.n)
    for e in trace.events:
        g.apply(e)
    return g


# ---- text format -----------------------------------------------------------

_HEADER = re.compile(r"n (0|[1-9][0-9]*)")
_EVENT = re.compile(r"([+-]) (0|[1-9][0-9]*) (0|[1-9][0-9]*)")


def parse_trace(text: str | bytes) -> UpdateTrace:
    """Parse trace text, validating every event against a replayed graph."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(1, f"not valid UTF-8: {exc}") from None
    if not text:
        raise ParseError(1, "empty input")
    lines = text.split("\n")
    if lines[-1] != "":
        raise ParseError(len(lines), "missing trailing newline")
    lines.pop()

    n: int | None = None
    g: DynGraph | None = None
    events: list[UpdateEvent] = []
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("#"):
            continue
        if n is None:
            m = _HEADER.fullmatch(line)
            if m is None:
                raise ParseError(lineno, f"expected header 'n <count>', got {line!r}")
            n = int(m.group(1))
            if n < 1:
                raise ParseError(lineno, "vertex count must be positive")
            g = DynGraph(n)
            continue
        m = _EVENT.fullmatch(line)
        if m is None:
            raise ParseError(lineno, f"expected '+ u v' or '- u v', got {line!r}")
        event = UpdateEvent(EventKind(m.group(1)), int(m.group(2)), int(m.group(3)))
        try:
            g.apply(event)  # type: ignore[union-attr]
        except GraphError as exc:
            err = ParseError(lineno, f"{type(exc).__name__}: {exc}")
            err.cause = exc  # type: ignore[attr-defined]
            raise err from exc
        events.append(event)
    if n is None:
        raise ParseError(max(len(lines), 1), "missing header 'n <count>'")
    return UpdateTrace(n, events)


def serialize_trace(trace: UpdateTrace) -> str:
    parts = [f"n {trace.n}\n"]
    parts.extend(f"{e.kind.value} {e.u} {e.v}\n" for e in trace.events)
    return "".join(parts)


def load_trace(path: str | Path) -> UpdateTrace:
    return parse_trace(Path(path).read_bytes())


def save_trace(trace: UpdateTrace, path: str | Path) -> None:
    Path(path).write_bytes(serialize_trace(trace).encode("utf-8"))


# ---- generators ------------------------------------------------------------


class _EdgePool:
    """Indexable set of present edges: O(1) add, remove, and uniform choice."""

    def __init__(self) -> None:
        self.items: list[tuple[int, int]] = []
        self.index: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, e: tuple[int, int]) -> bool:
        return e in self.index

    def add(self, e: tuple[int, int]) -> None:
        self.index[e] = len(self.items)
        self.items.append(e)

    def remove(self, e: tuple[int, int]) -> None:
        i = self.index.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.index[last] = i


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _random_absent(rng: random.Random, n: int, pool: _EdgePool) -> tuple[int, int]:
    max_m = n * (n - 1) // 2
    if len(pool) * 2 <= max_m:
        while True:
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            if _norm(u, v) not in pool:
                return (u, v)
    absent = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in pool]
    return rng.choice(absent)


def generate_trace(n: int, steps: int, p_delete: float, seed: int) -> UpdateTrace:
    """Random mixed trace; every prefix is valid.

    Each step deletes a uniformly random present edge with probability
    ``p_delete`` (when one exists) and otherwise inserts a uniformly random
    absent edge. A saturated graph forces a deletion, an empty one an insertion.
    """
    if n < 2:
        raise ValueError("need n >= 2 to have any edge")
    if not 0 <= p_delete < 1:
        raise ValueError("p_delete must lie in [0, 1)")
    rng = random.Random(seed)
    max_m = n * (n - 1) // 2
    pool = _EdgePool()
    events: list[UpdateEvent] = []
    for _ in range(steps):
        m = len(pool)
        delete = m == max_m or (m > 0 and rng.random() < p_delete)
        if delete:
            e = pool.items[rng.randrange(m)]
            pool.remove(e)
            events.append(UpdateEvent.delete(*e))
        else:
            u, v = _random_absent(rng, n, pool)
            pool.add(_norm(u, v))
            events.append(UpdateEvent.insert(u, v))
    return UpdateTrace(n, events)


def generate_hub_trace(
    n: int,
    steps: int,
    p_delete: float,
    seed: int,
    hubs: int = 2,
    p_hub: float = 0.8,
) -> UpdateTrace:
    """Star-heavy variant of :func:`generate_trace`.

    Insertions pick an absent edge at one of the first ``hubs`` vertices with
    probability ``p_hub``, so a few vertices reach degree far above sqrt(m).
    """
    if n < 2:
        raise ValueError("need n >= 2 to have any edge")
    if not 0 <= p_delete < 1:
        raise ValueError("p_delete must lie in [0, 1)")
    hubs = max(1, min(hubs, n - 1))
    rng = random.Random(seed)
    max_m = n * (n - 1) // 2
    pool = _EdgePool()
    events: list[UpdateEvent] = []
    for _ in range(steps):
        m = len(pool)
        delete = m == max_m or (m > 0 and rng.random() < p_delete)
        if delete:
            e = pool.items[rng.randrange(m)]
            pool.remove(e)
            events.append(UpdateEvent.delete(*e))
            continue
        edge = None
        if rng.random() < p_hub:
            h = rng.randrange(hubs)
            free = [x for x in range(n) if x != h and _norm(h, x) not in pool]
            if free:
                edge = (h, rng.choice(free))
        if edge is None:
            edge = _random_absent(rng, n, pool)
        pool.add(_norm(*edge))
        events.append(UpdateEvent.insert(*edge))
    return UpdateTrace(n, events)


def trace_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> UpdateTrace:
    """Insert-only trace adding ``edges`` in order."""
    return UpdateTrace(n, [UpdateEvent.insert(u, v) for u, v in edges])


def generate_connected_trace(n: int, extra: int, seed: int) -> UpdateTrace:
    """Insert-only trace whose final graph is connected.

    A random recursive spanning tree (each vertex attaches to an earlier one) plus
    ``extra`` further random edges, all inserted in shuffled order.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {_norm(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    edges.update(rng.sample(all_pairs, min(extra, len(all_pairs))))
    ordered = sorted(edges)
    rng.shuffle(ordered)
    return trace_from_edges(n, ordered)
