"""Euler-tour forest on splay trees.

Each vertex owns one *loop* node and each tree edge two *arc* nodes; a tree is
stored as its Euler tour in one splay tree. Vertex loop nodes carry two flag
bits that are OR-aggregated over subtrees, which lets the leveled connectivity
structure find vertices with incident tree edges or non-tree edges of a given
level in O(log n) per hit.
"""

from __future__ import annotations

from typing import Iterator

__all__ = ["EulerTourForest", "TREE_BIT", "NONTREE_BIT"]

TREE_BIT = 1
NONTREE_BIT = 2


class _Node:
    __slots__ = ("left", "right", "parent", "vertex", "owner", "size", "vcount", "flags", "agg")

    def __init__(self, vertex: int, owner: int) -> None:
        self.left: _Node | None = None
        self.right: _Node | None = None
        self.parent: _Node | None = None
        self.vertex = vertex  # -1 for arc nodes
        self.owner = owner  # tail vertex of the arc, or the vertex itself
        self.size = 1
        self.vcount = 1 if vertex >= 0 else 0
        self.flags = 0
        self.agg = 0


def _pull(x: _Node) -> None:
    size = 1
    vc = 1 if x.vertex >= 0 else 0
    agg = x.flags
    l, r = x.left, x.right
    if l is not None:
        size += l.size
        vc += l.vcount
        agg |= l.agg
    if r is not None:
        size += r.size
        vc += r.vcount
        agg |= r.agg
    x.size = size
    x.vcount = vc
    x.agg = agg


def _rotate(x: _Node) -> None:
    p = x.parent
    g = p.parent  # type: ignore[union-attr]
    if p.left is x:  # type: ignore[union-attr]
        b = x.right
        p.left = b  # type: ignore[union-attr]
        x.right = p
    else:
        b = x.left
        p.right = b  # type: ignore[union-attr]
        x.left = p
    if b is not None:
        b.parent = p
    p.parent = x  # type: ignore[union-attr]
    x.parent = g
    if g is not None:
        if g.left is p:
            g.left = x
        else:
            g.right = x
    _pull(p)  # type: ignore[arg-type]
    _pull(x)


def _splay(x: _Node) -> None:
    while x.parent is not None:
        p = x.parent
        g = p.parent
        if g is not None:
            if (g.left is p) == (p.left is x):
                _rotate(p)
            else:
                _rotate(x)
        _rotate(x)


def _leftmost(x: _Node) -> _Node:
    while x.left is not None:
        x = x.left
    return x


def _rightmost(x: _Node) -> _Node:
    while x.right is not None:
        x = x.right
    return x


def _join(a: _Node | None, b: _Node | None) -> _Node | None:
    """Concatenate the tours rooted at ``a`` and ``b`` (both splay roots)."""
    if a is None:
        return b
    if b is None:
        return a
    m = _rightmost(a)
    _splay(m)
    m.right = b
    b.parent = m
    _pull(m)
    return m


class EulerTourForest:
    def __init__(self, n: int) -> None:
        self.n = n
        self.loops = [_Node(v, v) for v in range(n)]
        self.arcs: dict[tuple[int, int], _Node] = {}

    def _root(self, v: int) -> _Node:
        x = self.loops[v]
        _splay(x)
        return x

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        x, y = self.loops[u], self.loops[v]
        _splay(x)
        _splay(y)
        return x.parent is not None

    def tree_size(self, v: int) -> int:
        """Number of vertices in the tree of ``v``."""
        return self._root(v).vcount

    def representative(self, v: int) -> int:
        """Canonical vertex of the tree of ``v``; stable until the next mutation."""
        first = _leftmost(self._root(v))
        _splay(first)
        return first.owner

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def _reroot(self, v: int) -> _Node:
        x = self.loops[v]
        _splay(x)
        l = x.left
        if l is None:
            return x
        l.parent = None
        x.left = None
        _pull(x)
        return _join(x, l)  # type: ignore[return-value]

    def link(self, u: int, v: int) -> None:
        tu = self._reroot(u)
        tv = self._reroot(v)
        a = _Node(-1, u)
        b = _Node(-1, v)
        self.arcs[(u, v)] = a
        self.arcs[(v, u)] = b
        _join(_join(_join(tu, a), tv), b)

    def cut(self, u: int, v: int) -> None:
        a = self.arcs.pop((u, v))
        b = self.arcs.pop((v, u))
        _splay(a)
        pos_a = a.left.size if a.left is not None else 0
        _splay(b)
        pos_b = b.left.size if b.left is not None else 0
        if pos_a > pos_b:
            a, b = b, a
        # tour = A a B b C  ->  A C  and  B
        _splay(a)
        left, mid = a.left, a.right
        if left is not None:
            left.parent = None
        if mid is not None:
            mid.parent = None
        a.left = a.right = None
        _splay(b)
        inner, right = b.left, b.right
        if inner is not None:
            inner.parent = None
        if right is not None:
            right.parent = None
        b.left = b.right = None
        _join(left, right)

    def set_flag(self, v: int, bit: int, on: bool) -> None:
        x = self.loops[v]
        new = (x.flags | bit) if on else (x.flags & ~bit)
        if new == x.flags:
            return
        _splay(x)
        x.flags = new
        _pull(x)

    def find_flagged(self, v: int, bit: int) -> int | None:
        """Some vertex in the tree of ``v`` whose loop node carries ``bit``."""
        x = self._root(v)
        if not x.agg & bit:
            return None
        while True:
            l = x.left
            if l is not None and l.agg & bit:
                x = l
            elif x.flags & bit:
                _splay(x)
                return x.vertex
            else:
                x = x.right  # type: ignore[assignment]

    def flagged(self, v: int, bit: int) -> list[int]:
        """All vertices in the tree of ``v`` whose loop node carries ``bit``."""
        root = self._root(v)
        out: list[int] = []
        stack = [root]
        while stack:
            x = stack.pop()
            if not x.agg & bit:
                continue
            if x.flags & bit:
                out.append(x.vertex)
            if x.left is not None:
                stack.append(x.left)
            if x.right is not None:
                stack.append(x.right)
        return out

    def vertices(self, v: int) -> Iterator[int]:
        """Vertices of the tree of ``v`` in tour order (first occurrence)."""
        root = self._root(v)
        stack: list[_Node] = []
        x: _Node | None = root
        while stack or x is not None:
            while x is not None:
                stack.append(x)
                x = x.left
            x = stack.pop()
            if x.vertex >= 0:
                yield x.vertex
            x = x.right
