"""Link-cut tree over vertices ``0..n-1`` with per-vertex integer values.

Supports link/cut, path minimum with argmin, path-wide additive updates, path
listing and rooted LCA queries, all amortized O(log n). Nodes are stored in
parallel lists indexed by ``vertex + 1``; index 0 is the null node.
"""

from __future__ import annotations

from ..errors import Disconnected

__all__ = ["PathForest"]

_INF = float("inf")


class PathForest:
    def __init__(self, n: int, value: int = 0) -> None:
        self.n = n
        size = n + 1
        self._l = [0] * size
        self._r = [0] * size
        self._p = [0] * size
        self._rev = [False] * size
        self._lazy = [0] * size
        self._val = [value] * size
        self._mn = [value] * size
        self._argl = list(range(size))  # leftmost argmin in the subtree
        self._argr = list(range(size))  # rightmost argmin
        self._sz = [1] * size
        self._mn[0] = _INF
        self._sz[0] = 0
        self._argl[0] = self._argr[0] = 0

    # ---- splay machinery ---------------------------------------------------------

    def _is_root(self, x: int) -> bool:
        p = self._p[x]
        return p == 0 or (self._l[p] != x and self._r[p] != x)

    def _apply_rev(self, x: int) -> None:
        if x:
            self._l[x], self._r[x] = self._r[x], self._l[x]
            self._argl[x], self._argr[x] = self._argr[x], self._argl[x]
            self._rev[x] = not self._rev[x]

    def _apply_add(self, x: int, d: int) -> None:
        if x:
            self._val[x] += d
            self._mn[x] += d
            self._lazy[x] += d

    def _push(self, x: int) -> None:
        if self._rev[x]:
            self._apply_rev(self._l[x])
            self._apply_rev(self._r[x])
            self._rev[x] = False
        d = self._lazy[x]
        if d:
            self._apply_add(self._l[x], d)
            self._apply_add(self._r[x], d)
            self._lazy[x] = 0

    def _pull(self, x: int) -> None:
        l, r = self._l[x], self._r[x]
        mn = self._mn
        self._sz[x] = 1 + self._sz[l] + self._sz[r]
        v = self._val[x]
        # leftmost argmin: left subtree wins ties, then x, then right
        best, arg = v, x
        if mn[l] <= best:
            best, arg = mn[l], self._argl[l]
        if mn[r] < best:
            best, arg = mn[r], self._argl[r]
        mn[x] = best
        self._argl[x] = arg
        best_r, arg_r = v, x
        if mn[r] <= best_r:
            best_r, arg_r = mn[r], self._argr[r]
        if mn[l] < best_r:
            best_r, arg_r = mn[l], self._argr[l]
        self._argr[x] = arg_r

    def _rotate(self, x: int) -> None:
        p = self._p[x]
        g = self._p[p]
        L, R, P = self._l, self._r, self._p
        if not self._is_root(p):
            if L[g] == p:
                L[g] = x
            else:
                R[g] = x
        P[x] = g
        if L[p] == x:
            b = R[x]
            L[p] = b
            R[x] = p
        else:
            b = L[x]
            R[p] = b
            L[x] = p
        if b:
            P[b] = p
        P[p] = x
        self._pull(p)
        self._pull(x)

    def _splay(self, x: int) -> None:
        stack = [x]
        y = x
        while not self._is_root(y):
            y = self._p[y]
            stack.append(y)
        for y in reversed(stack):
            self._push(y)
        P, L = self._p, self._l
        while not self._is_root(x):
            p = P[x]
            if not self._is_root(p):
                g = P[p]
                if (L[g] == p) == (L[p] == x):
                    self._rotate(p)
                else:
                    self._rotate(x)
            self._rotate(x)

    def _access(self, x: int) -> int:
        last = 0
        y = x
        while y:
            self._splay(y)
            self._r[y] = last
            self._pull(y)
            last = y
            y = self._p[y]
        self._splay(x)
        return last

    def _make_root(self, x: int) -> None:
        self._access(x)
        self._apply_rev(x)

    def _find_root(self, x: int) -> int:
        self._access(x)
        y = x
        while True:
            self._push(y)
            if not self._l[y]:
                break
            y = self._l[y]
        self._splay(y)
        return y

    def _expose_path(self, u: int, v: int) -> int:
        """Make the aux tree rooted at node v hold exactly the path u..v."""
        x, y = u + 1, v + 1
        if x != y and self._find_root(x) != self._find_root(y):
            raise Disconnected(f"{u} and {v} are in different trees")
        self._make_root(x)
        self._access(y)
        return y

    # ---- public API --------------------------------------------------------------

    def connected(self, u: int, v: int) -> bool:
        return u == v or self._find_root(u + 1) == self._find_root(v + 1)

    def link(self, u: int, v: int) -> None:
        x, y = u + 1, v + 1
        if self._find_root(x) == self._find_root(y):
            raise ValueError(f"link({u}, {v}) would close a cycle")
        self._make_root(x)
        self._p[x] = y

    def cut(self, u: int, v: int) -> None:
        x, y = u + 1, v + 1
        self._make_root(x)
        self._access(y)
        if self._l[y] != x or self._sz[y] != 2:
            raise ValueError(f"({u}, {v}) is not a forest edge")
        self._l[y] = 0
        self._p[x] = 0
        self._pull(y)

    def value(self, v: int) -> int:
        x = v + 1
        self._splay(x)
        return self._val[x]

    def set_value(self, v: int, value: int) -> None:
        x = v + 1
        self._access(x)
        self._val[x] = value
        self._pull(x)

    def add_value(self, v: int, delta: int) -> None:
        x = v + 1
        self._access(x)
        self._val[x] += delta
        self._pull(x)

    def path_add(self, u: int, v: int, delta: int) -> None:
        y = self._expose_path(u, v)
        self._apply_add(y, delta)

    def path_min(self, u: int, v: int) -> tuple[int, int]:
        """Minimum value on the u..v path and the vertex attaining it nearest to ``u``."""
        y = self._expose_path(u, v)
        return self._mn[y], self._argl[y] - 1

    def path(self, u: int, v: int) -> list[int]:
        """Vertices of the tree path from ``u`` to ``v``, in order."""
        y = self._expose_path(u, v)
        out: list[int] = []
        stack: list[int] = []
        x = y
        while stack or x:
            while x:
                self._push(x)
                stack.append(x)
                x = self._l[x]
            x = stack.pop()
            out.append(x - 1)
            x = self._r[x]
        return out

    def path_length(self, u: int, v: int) -> int:
        """Number of vertices on the u..v path."""
        y = self._expose_path(u, v)
        return self._sz[y]

    def lca(self, root: int, a: int, b: int) -> int:
        """Lowest common ancestor of ``a`` and ``b`` with the tree rooted at ``root``."""
        r, x, y = root + 1, a + 1, b + 1
        tr = self._find_root(r)
        if self._find_root(x) != tr or self._find_root(y) != tr:
            raise Disconnected("lca query across trees")
        self._make_root(r)
        self._access(x)
        return self._access(y) - 1

    def depth(self, root: int, v: int) -> int:
        """Edge distance from ``root`` to ``v``."""
        return self.path_length(root, v) - 1

    def position_on_path(self, u: int, v: int, x: int) -> int:
        """Index along the u..v path of the path vertex closest to ``x``."""
        proj = self.lca(u, v, x)
        return self.depth(u, proj)
