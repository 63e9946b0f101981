"""Brute-force ground truth for every invariant the solvers maintain.

Everything here recomputes from definitions: adjacency sets in, verdicts out.
Functions accept either a :class:`~dyndom.graph.DynGraph` or a plain
``list[set[int]]`` adjacency.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import log2
from typing import Collection, Iterable, Sequence

from .errors import TooLarge

__all__ = [
    "OracleReport",
    "components",
    "is_dominating",
    "undominated",
    "stability_violations",
    "is_stable",
    "is_minimal_ds",
    "redundant_members",
    "dtilde_connected",
    "is_minimal_connector",
    "nonarticulation_connectors",
    "nc_bruteforce",
    "exact_min_ds",
    "exact_min_cds",
    "greedy_static_ds",
    "mst_weight_bruteforce",
    "harmonic",
    "verify_level_solution",
    "verify_minimal",
    "verify_cds",
    "DS_CAP",
    "CDS_CAP",
]

DS_CAP = 20
CDS_CAP = 14

Adjacency = Sequence[Collection[int]]


def _adj(g) -> Adjacency:
    return g.adj if hasattr(g, "adj") else g


@dataclass
class OracleReport:
    flags: dict[str, bool] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.flags.items() if not v]

    def set(self, flag: str, problems: list[str]) -> None:
        self.flags[flag] = not problems
        self.details.extend(f"{flag}: {p}" for p in problems[:20])

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAILED " + ",".join(self.failed())
        return "\n".join([status, *self.details])


# ---- connectivity helpers ----------------------------------------------------


def components(g, within: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of the subgraph induced by ``within`` (default: all)."""
    adj = _adj(g)
    allowed = set(range(len(adj))) if within is None else set(within)
    seen: set[int] = set()
    out: list[list[int]] = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(comp)
    return out


def _reach(adj: Adjacency, start: int, allowed: set[int]) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# ---- domination ----------------------------------------------------------------


def undominated(g, D: Collection[int]) -> list[int]:
    adj = _adj(g)
    ds = set(D)
    return [v for v in range(len(adj)) if v not in ds and ds.isdisjoint(adj[v])]


def is_dominating(g, D: Collection[int]) -> bool:
    return not undominated(g, D)


def redundant_members(g, D: Collection[int]) -> list[int]:
    """Members whose removal keeps ``D`` dominating."""
    adj = _adj(g)
    ds = set(D)
    cover = [0] * len(adj)
    for d in ds:
        cover[d] += 1
        for w in adj[d]:
            cover[w] += 1
    return sorted(v for v in ds if cover[v] >= 2 and all(cover[w] >= 2 for w in adj[v]))


def is_minimal_ds(g, D: Collection[int]) -> bool:
    return is_dominating(g, D) and not redundant_members(g, D)


# ---- level solutions -----------------------------------------------------------


def stability_violations(g, snap: dict) -> list[str]:
    """Check a level-solution snapshot against its definitions.

    Validates: each vertex in exactly one pair, pair members within the closed
    neighborhood of the dominant, level ranges, recorded levels and counters,
    and the stability condition ``|N[v] cap V_l| <= 2**l``.
    """
    adj = _adj(g)
    n = len(adj)
    l_max = snap["l_max"]
    problems: list[str] = []
    level = [0] * n
    seen = [0] * n
    for dominant, dom, lvl in snap["pairs"]:
        if not dom:
            problems.append(f"empty pair headed by {dominant}")
        if not 1 <= lvl <= l_max:
            problems.append(f"pair of {dominant} at out-of-range level {lvl}")
        card = len(dom)
        if card > 2**lvl or card < 2 ** (lvl - 10):
            problems.append(f"pair of {dominant} with |dom|={card} invalid at level {lvl}")
        for x in dom:
            seen[x] += 1
            level[x] = lvl
            if x != dominant and x not in adj[dominant]:
                problems.append(f"{x} in Dom({dominant}) but not adjacent")
    for v in range(n):
        if seen[v] != 1:
            problems.append(f"vertex {v} appears in {seen[v]} pairs")
        if snap["level_of"][v] != level[v]:
            problems.append(f"level_of[{v}]={snap['level_of'][v]} but pair level {level[v]}")
    for v in range(n):
        counts = [0] * (l_max + 1)
        counts[level[v]] += 1
        for w in adj[v]:
            counts[level[w]] += 1
        row = snap["cnt"][v]
        for lvl in range(1, l_max + 1):
            if counts[lvl] != row[lvl]:
                problems.append(f"cnt[{v}][{lvl}]={row[lvl]} but true count {counts[lvl]}")
            if counts[lvl] > 2**lvl:
                problems.append(f"vertex {v} violates stability at level {lvl} ({counts[lvl]})")
    return problems


def is_stable(g, snap: dict) -> bool:
    return not stability_violations(g, snap)


# ---- connected dominating sets -------------------------------------------------


def dtilde_connected(g, dtilde: Collection[int]) -> list[str]:
    """Components of ``g`` in which ``dtilde`` induces a disconnected subgraph."""
    adj = _adj(g)
    dt = set(dtilde)
    problems = []
    for comp in components(g):
        part = [v for v in comp if v in dt]
        if not part:
            continue
        reached = _reach(adj, part[0], dt)
        if len(reached) != len(part):
            problems.append(f"component containing {comp[0]} splits D~ ({len(reached)}/{len(part)})")
    return problems


def nonarticulation_connectors(g, D: Collection[int], C: Collection[int]) -> list[int]:
    """Connectors whose removal leaves their part of ``D | C`` connected."""
    adj = _adj(g)
    dt = set(D) | set(C)
    out = []
    for c in sorted(C):
        part = _reach(adj, c, dt)
        rest = part - {c}
        if not rest or len(_reach(adj, next(iter(rest)), rest)) == len(rest):
            out.append(c)
    return out


def is_minimal_connector(g, D: Collection[int], C: Collection[int]) -> bool:
    return not nonarticulation_connectors(g, D, C)


def nc_bruteforce(g, dtilde: Collection[int], v: int) -> int:
    """Components of ``G[dtilde - {v}]`` lying in v's component of ``G[dtilde]``."""
    adj = _adj(g)
    dt = set(dtilde)
    part = _reach(adj, v, dt)
    part.discard(v)
    count = 0
    while part:
        s = part.pop()
        count += 1
        part -= _reach(adj, s, part | {s})
    return count


def mst_weight_bruteforce(g, dtilde: Collection[int]) -> int:
    """Kruskal weight with weight 1 inside ``dtilde`` and ``m`` elsewhere."""
    adj = _adj(g)
    n = len(adj)
    dt = set(dtilde)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    m = len(edges)
    weighted = sorted(((1 if u in dt and v in dt else m), u, v) for u, v in edges)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0
    for w, u, v in weighted:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            total += w
    return total


# ---- exact optima ----------------------------------------------------------------


def _masks(adj: Adjacency) -> list[int]:
    out = []
    for v, nbrs in enumerate(adj):
        m = 1 << v
        for w in nbrs:
            m |= 1 << w
        out.append(m)
    return out


def _min_ds_size(masks: list[int], full: int) -> int:
    n = len(masks)
    best_gain = max(m.bit_count() for m in masks)

    def search(covered: int, k: int) -> bool:
        if covered == full:
            return True
        missing = (full & ~covered).bit_count()
        if k == 0 or k * best_gain < missing:
            return False
        low = (full & ~covered) & -(full & ~covered)
        u = low.bit_length() - 1
        cand = masks[u]
        while cand:
            bit = cand & -cand
            cand ^= bit
            if search(covered | masks[bit.bit_length() - 1], k - 1):
                return True
        return False

    for k in range(n + 1):
        if search(0, k):
            return k
    return n


def exact_min_ds(g) -> tuple[int, tuple[int, ...]]:
    """Minimum dominating set size and the lexicographically least optimal witness."""
    adj = _adj(g)
    n = len(adj)
    if n > DS_CAP:
        raise TooLarge(f"exact_min_ds limited to n <= {DS_CAP}")
    masks = _masks(adj)
    full = (1 << n) - 1
    k = _min_ds_size(masks, full)
    for combo in combinations(range(n), k):
        cov = 0
        for v in combo:
            cov |= masks[v]
        if cov == full:
            return k, combo
    raise AssertionError("size search and witness search disagree")


def exact_min_cds(g) -> tuple[int, tuple[int, ...]]:
    """Minimum connected dominating set of a connected graph (lexicographically least witness)."""
    adj = _adj(g)
    n = len(adj)
    if n > CDS_CAP:
        raise TooLarge(f"exact_min_cds limited to n <= {CDS_CAP}")
    if len(components(g)) != 1:
        raise ValueError("exact_min_cds requires a connected graph")
    masks = _masks(adj)
    full = (1 << n) - 1
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            cov = 0
            for v in combo:
                cov |= masks[v]
            if cov != full:
                continue
            if len(_reach(adj, combo[0], set(combo))) == k:
                return k, combo
    raise AssertionError("a connected graph always has a connected dominating set")


def greedy_static_ds(g) -> set[int]:
    """Classic greedy: repeatedly take the vertex covering most uncovered vertices."""
    adj = _adj(g)
    n = len(adj)
    uncovered = set(range(n))
    chosen: set[int] = set()
    while uncovered:
        best, gain = -1, -1
        for v in range(n):
            c = (v in uncovered) + sum(1 for w in adj[v] if w in uncovered)
            if c > gain:
                best, gain = v, c
        chosen.add(best)
        uncovered.discard(best)
        uncovered.difference_update(adj[best])
    return chosen


def harmonic(n: int) -> float:
    return sum(1.0 / i for i in range(1, n + 1))


# ---- solver-level reports ----------------------------------------------------------


def verify_level_solution(g, snap: dict, members: Collection[int]) -> OracleReport:
    report = OracleReport()
    report.set("dominating", [f"vertex {v} undominated" for v in undominated(g, members)])
    report.set("stable", stability_violations(g, snap))
    heads = {d for d, _dom, _l in snap["pairs"]}
    report.set("members", [] if heads == set(members) else ["member set differs from pair heads"])
    return report


def verify_minimal(g, snap: dict, check_sets: bool = True) -> OracleReport:
    """Domination, minimality and (optionally) the N_D / OnlyBy bookkeeping."""
    adj = _adj(g)
    D = snap["in_d"]
    report = OracleReport()
    report.set("dominating", [f"vertex {v} undominated" for v in undominated(g, D)])
    report.set("minimal_ds", [f"member {v} redundant" for v in redundant_members(g, D)])
    if check_sets:
        problems = []
        for v in range(len(adj)):
            true_nd = {w for w in adj[v] if w in D} | ({v} if v in D else set())
            if snap["nd"][v] != true_nd:
                problems.append(f"nd[{v}]={sorted(snap['nd'][v])} expected {sorted(true_nd)}")
        for v in D:
            closed = set(adj[v]) | {v}
            true_ob = {u for u in closed if len(snap["nd"][u]) == 1}
            if snap["only_by"].get(v) != true_ob:
                problems.append(f"only_by[{v}] mismatch")
        report.set("sets", problems)
    return report


def verify_cds(
    g,
    D: Collection[int],
    C: Collection[int],
    nc: dict[int, int] | None = None,
) -> OracleReport:
    """Domination of D, per-component connectivity of D | C, connector minimality,
    ``C & D`` empty, ``|C| <= 2|D|`` and, when ``nc`` is given, nc correctness."""
    n = len(_adj(g))
    ds, cs = set(D), set(C)
    dt = ds | cs
    report = OracleReport()
    report.set("dominating", [f"vertex {v} undominated" for v in undominated(g, ds)])
    report.set("disjoint", [f"vertex {v} in C and D" for v in sorted(ds & cs)])
    report.set("dtilde_connected", dtilde_connected(g, dt))
    report.set("c_minimal", [f"connector {c} is not an articulation point"
                             for c in nonarticulation_connectors(g, ds, cs)])
    report.set("size_ratio", [] if len(cs) <= 2 * len(ds) else [f"|C|={len(cs)} > 2|D|={2 * len(ds)}"])
    if nc is not None:
        problems = []
        for v in sorted(dt):
            true = nc_bruteforce(g, dt, v)
            if nc.get(v, -1) % n != true:
                problems.append(f"nc({v})={nc.get(v)} but brute force {true}")
        report.set("nc_ok", problems)
    return report


def approximation_bound_ds(n: int, opt: int) -> float:
    return 2**10 * log2(n) * opt


def approximation_bound_cds(n: int, opt: int) -> float:
    return 3 * 2**10 * log2(n) * opt
