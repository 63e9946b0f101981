"""Replay driver, oracle checkpoints, metrics and the scaling benchmark."""

from __future__ import annotations

import csv
import math
import random
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Union

from .cds import ConnectedDominatingSet
from .errors import DynDomError
from .graph import (
    DynGraph,
    UpdateEvent,
    UpdateTrace,
    generate_hub_trace,
    generate_trace,
    serialize_trace,
)
from .mds import LevelSolution
from .minimal import MinimalDominatingSet
from .oracle import (
    CDS_CAP,
    DS_CAP,
    OracleReport,
    components,
    exact_min_cds,
    exact_min_ds,
    verify_cds,
    verify_level_solution,
    verify_minimal,
)

__all__ = [
    "SOLVERS",
    "METRIC_FIELDS",
    "NC_CHECK_CAP",
    "RunResult",
    "BenchRow",
    "BenchResult",
    "make_solver",
    "solution_sets",
    "check",
    "optimum",
    "run",
    "parse_gen_spec",
    "generate_scan_trace",
    "trace_from_gen",
    "scaling_bench",
    "write_snapshot",
]

SOLVERS = ("mds", "minimal", "cds-slow", "cds-fast")
METRIC_FIELDS = (
    "event", "dsize", "csize", "dtsize", "lvl_changes", "d_changes",
    "dt_adds", "ns_mean", "ns_p99", "opt", "ratio",
)
# brute-force nc comparison is quadratic; above this size verification skips it
NC_CHECK_CAP = 40

Solver = Union[LevelSolution, MinimalDominatingSet, ConnectedDominatingSet]


def make_solver(name: str, n: int, backend: str = "leveled") -> Solver:
    if name == "mds":
        return LevelSolution(n)
    if name == "minimal":
        return MinimalDominatingSet(n)
    if name == "cds-slow":
        return ConnectedDominatingSet(n, mode="slow", backend=backend)
    if name == "cds-fast":
        return ConnectedDominatingSet(n, mode="fast", backend=backend)
    raise ValueError(f"unknown solver {name!r}; choose from {', '.join(SOLVERS)}")


def solution_sets(solver: Solver) -> tuple[set[int], set[int]]:
    """``(D, C)``; ``C`` is empty for the non-connected solvers."""
    if isinstance(solver, ConnectedDominatingSet):
        return set(solver.dominating_set), set(solver.connectors)
    return set(solver.members), set()


def check(solver: Solver, check_nc: bool | None = None) -> OracleReport:
    """Run every oracle that applies to ``solver``'s current state."""
    g = solver.graph
    if isinstance(solver, LevelSolution):
        return verify_level_solution(g, solver.snapshot(), solver.members)
    if isinstance(solver, MinimalDominatingSet):
        return verify_minimal(g, solver.snapshot())
    if check_nc is None:
        check_nc = solver.fast and solver.n <= NC_CHECK_CAP
    nc = solver.nc_table() if check_nc else None
    report = verify_cds(g, solver.dominating_set, solver.connectors, nc)
    inner = verify_level_solution(g, solver.mds.snapshot(), solver.mds.members)
    report.set("stable", inner.details)
    return report


def optimum(solver: Solver) -> int | None:
    """Exact optimum for the solver's objective, or None above the oracle cap."""
    g = solver.graph
    if isinstance(solver, ConnectedDominatingSet):
        if g.n > CDS_CAP:
            return None
        total = 0
        for comp in components(g):
            if len(comp) == 1:
                total += 1
                continue
            index = {v: i for i, v in enumerate(comp)}
            sub = [{index[w] for w in g.adj[v]} for v in comp]
            total += exact_min_cds(sub)[0]
        return total
    if g.n > DS_CAP:
        return None
    return exact_min_ds(g)[0]


def _counters(solver: Solver) -> dict[str, Any]:
    d, c = solution_sets(solver)
    if isinstance(solver, ConnectedDominatingSet):
        return {
            "dsize": len(d), "csize": len(c), "dtsize": solver.dt_size,
            "lvl_changes": solver.mds.level_changes, "d_changes": solver.mds.d_changes,
            "dt_adds": solver.dt_adds,
        }
    if isinstance(solver, LevelSolution):
        return {
            "dsize": len(d), "csize": 0, "dtsize": len(d),
            "lvl_changes": solver.level_changes, "d_changes": solver.d_changes,
            "dt_adds": "",
        }
    return {
        "dsize": len(d), "csize": 0, "dtsize": len(d),
        "lvl_changes": "", "d_changes": solver.d_changes, "dt_adds": "",
    }


def _metrics_row(event: int, solver: Solver, times: list[int], with_opt: bool) -> dict[str, Any]:
    row: dict[str, Any] = {"event": event, **_counters(solver)}
    if times:
        ordered = sorted(times)
        row["ns_mean"] = round(statistics.fmean(ordered))
        row["ns_p99"] = ordered[min(len(ordered) - 1, math.ceil(0.99 * len(ordered)) - 1)]
    else:
        row["ns_mean"] = row["ns_p99"] = ""
    opt = optimum(solver) if with_opt else None
    if opt:
        row["opt"] = opt
        row["ratio"] = f"{row['dtsize'] / opt:.4f}"
    else:
        row["opt"] = row["ratio"] = ""
    return row


@dataclass
class RunResult:
    solver: Solver
    events_applied: int
    failure_index: int | None = None
    report: OracleReport | None = None
    error: str | None = None
    rows: list[dict[str, Any]] = field(default_factory=list)
    snapshot_path: Path | None = None

    @property
    def ok(self) -> bool:
        return self.failure_index is None


def run(
    trace: UpdateTrace,
    solver_name: str,
    *,
    backend: str = "leveled",
    verify_every: int = 0,
    checkpoint_every: int = 100,
    metrics_path: str | Path | None = None,
    snapshot_path: str | Path | None = None,
    with_opt: bool = True,
    check_nc: bool | None = None,
) -> RunResult:
    """Replay ``trace`` through a fresh solver, verifying every ``verify_every`` events.

    Stops at the first oracle violation (or solver error), writing a snapshot
    when ``snapshot_path`` is given. Metrics rows are collected every
    ``checkpoint_every`` events and after the last one.
    """
    if verify_every < 0 or checkpoint_every < 0:
        raise ValueError("intervals must be non-negative")
    solver = make_solver(solver_name, trace.n, backend)
    result = RunResult(solver, 0)
    times: list[int] = []
    clock = time.perf_counter_ns
    last_row = -1
    for i, event in enumerate(trace.events):
        try:
            t0 = clock()
            solver.apply(event)
            times.append(clock() - t0)
        except DynDomError as exc:
            result.failure_index = i
            result.error = f"{type(exc).__name__}: {exc}"
            break
        result.events_applied = i + 1
        if verify_every and (i + 1) % verify_every == 0:
            report = check(solver, check_nc)
            if not report.ok:
                result.failure_index = i
                result.report = report
                break
        if checkpoint_every and (i + 1) % checkpoint_every == 0:
            result.rows.append(_metrics_row(i + 1, solver, times, with_opt))
            last_row = i + 1
            times = []
    if result.ok and verify_every and result.events_applied % verify_every:
        report = check(solver, check_nc)
        if not report.ok:
            result.failure_index = result.events_applied - 1
            result.report = report
    if result.events_applied != last_row:
        result.rows.append(_metrics_row(result.events_applied, solver, times, with_opt))
    if metrics_path is not None:
        with open(metrics_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=METRIC_FIELDS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(result.rows)
    if not result.ok and snapshot_path is not None:
        result.snapshot_path = write_snapshot(snapshot_path, trace, solver_name, result)
    return result


def write_snapshot(path: str | Path, trace: UpdateTrace, solver_name: str, result: RunResult) -> Path:
    """Dump the failing state as text and the trace prefix next to it (``<path>.trace``).

    Layout: ``key value`` header lines (solver, event, failure), oracle details
    prefixed with ``! ``, then ``D``/``C`` member lines and, for level
    solutions, one ``pair <dominant> <level> <members...>`` line per pair.
    """
    path = Path(path)
    solver = result.solver
    index = result.failure_index if result.failure_index is not None else result.events_applied - 1
    lines = [
        "# dyndom failure snapshot",
        f"solver {solver_name}",
        f"n {trace.n}",
        f"event {index}",
        f"applied {result.events_applied}",
    ]
    if result.error:
        lines.append(f"error {result.error}")
    if result.report is not None:
        lines.append(f"failed {','.join(result.report.failed())}")
        lines.extend(f"! {d}" for d in result.report.details)
    d, c = solution_sets(solver)
    lines.append("D " + " ".join(map(str, sorted(d))))
    lines.append("C " + " ".join(map(str, sorted(c))))
    level = solver.mds if isinstance(solver, ConnectedDominatingSet) else solver
    if isinstance(level, LevelSolution):
        for dominant, dom, lvl in sorted(level.snapshot()["pairs"], key=lambda p: (p[0], p[2])):
            lines.append(f"pair {dominant} {lvl} " + " ".join(map(str, sorted(dom))))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    prefix = trace.prefix(index + 1)
    Path(str(path) + ".trace").write_text(serialize_trace(prefix), encoding="utf-8")
    return path


_GEN_KEYS = {"n": int, "steps": int, "pdel": float, "seed": int, "hubs": int}


def parse_gen_spec(spec: str) -> dict[str, Any]:
    """Parse ``n=..,steps=..,pdel=..,seed=..`` (``hubs=k`` selects the hub generator)."""
    out: dict[str, Any] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in _GEN_KEYS:
            raise ValueError(f"bad generator field {part!r}; expected one of {sorted(_GEN_KEYS)}")
        try:
            out[key] = _GEN_KEYS[key](value)
        except ValueError:
            raise ValueError(f"bad value for {key}: {value!r}") from None
    if "n" not in out or "steps" not in out:
        raise ValueError("generator spec needs at least n= and steps=")
    return out


def trace_from_gen(spec: dict[str, Any], default_seed: int = 0) -> UpdateTrace:
    seed = spec.get("seed", default_seed)
    pdel = spec.get("pdel", 0.0)
    if "hubs" in spec:
        return generate_hub_trace(spec["n"], spec["steps"], pdel, seed, hubs=spec["hubs"])
    return generate_trace(spec["n"], spec["steps"], pdel, seed)


def generate_scan_trace(k: int, steps: int, seed: int) -> UpdateTrace:
    """Trace that repeatedly leaves a high-degree hub without a dominator.

    Vertex 0 is the hub, ``1..k`` its leaves, ``k+1..2k`` a private partner
    per leaf and ``2k+1`` a spare vertex. Partners dominate the leaves, so the
    hub is dominated by one member at a time; the generator deletes that edge
    whenever it can (steering by an internal minimal-DS replay), which forces
    the neighbor-scan branch of the dominator selection.
    """
    if k < 2:
        raise ValueError("need k >= 2 leaves")
    rng = random.Random(seed)
    n = 2 * k + 2
    hub, spare = 0, n - 1
    leaves = list(range(1, k + 1))
    solver = MinimalDominatingSet(n)
    g = solver.graph
    events: list[UpdateEvent] = []

    def emit(e: UpdateEvent) -> None:
        events.append(e)
        solver.apply(e)

    for leaf in leaves:
        emit(UpdateEvent.insert(leaf, leaf + k))
    for leaf in rng.sample(leaves, k):
        emit(UpdateEvent.insert(hub, leaf))
    emit(UpdateEvent.insert(hub, spare))
    while len(events) < steps:
        if not solver.in_d[hub] and len(solver.nd[hub]) == 1:
            (d,) = solver.nd[hub]
            emit(UpdateEvent.delete(hub, d))
            continue
        missing = [x for x in leaves if x not in g.adj[hub]]
        present = [x for x in leaves if x in g.adj[hub]]
        if missing and (not present or rng.random() < 0.8):
            emit(UpdateEvent.insert(hub, rng.choice(missing)))
        else:
            emit(UpdateEvent.delete(hub, rng.choice(present)))
    return UpdateTrace(n, events[:steps])


@dataclass
class BenchRow:
    n: int
    steps: int
    mean_ns: float
    delta: int
    m_max: int
    model: float

    @property
    def normalized(self) -> float:
        return self.mean_ns / self.model


@dataclass
class BenchResult:
    solver: str
    rows: list[BenchRow]
    exponent: float
    envelope: float
    status: str

    def table(self) -> str:
        model = "min(D,sqrt(m))" if self.solver == "minimal" else "D*log2(n)"
        out = [f"{'n':>6} {'steps':>7} {'mean_ns':>12} {'Delta':>6} {'m_max':>7} {model:>15} {'ns/model':>10}"]
        for r in self.rows:
            out.append(
                f"{r.n:>6} {r.steps:>7} {r.mean_ns:>12.0f} {r.delta:>6} {r.m_max:>7} "
                f"{r.model:>15.2f} {r.normalized:>10.1f}"
            )
        out.append(f"growth exponent of time vs model: {self.exponent:.3f}")
        out.append(f"envelope (max/min ns per model unit): {self.envelope:.2f}")
        out.append(f"trend: {self.status}")
        return "\n".join(out)


def _cost_model(solver: str, g: DynGraph) -> float:
    delta = max(1, g.delta_max)
    if solver == "minimal":
        return max(1.0, min(delta, math.sqrt(max(1, g.m_max))))
    return delta * math.log2(g.n)


def scaling_bench(
    solver: str = "mds",
    sizes: Iterable[int] = (64, 128, 256, 512),
    steps_per_vertex: int = 8,
    pdel: float = 0.0,
    seed: int = 0,
    backend: str = "leveled",
    envelope_limit: float = 10.0,
) -> BenchResult:
    """Mean per-update time per size against the solver's cost model.

    The exponent is the least-squares slope of log(time) on log(model); the
    trend is ``consistent`` when time/model varies by at most ``envelope_limit``.
    """
    rows: list[BenchRow] = []
    for n in sizes:
        steps = steps_per_vertex * n
        trace = generate_trace(n, steps, pdel, seed)
        s = make_solver(solver, n, backend)
        t0 = time.perf_counter_ns()
        for e in trace.events:
            s.apply(e)
        elapsed = time.perf_counter_ns() - t0
        g = s.graph
        rows.append(BenchRow(n, steps, elapsed / steps, g.delta_max, g.m_max, _cost_model(solver, g)))
    if len(rows) >= 2:
        xs = [math.log(r.model) for r in rows]
        ys = [math.log(r.mean_ns) for r in rows]
        exponent = statistics.linear_regression(xs, ys).slope if len(set(xs)) > 1 else float("nan")
    else:
        exponent = float("nan")
    norms = [r.normalized for r in rows]
    envelope = max(norms) / min(norms) if norms else float("nan")
    status = "consistent" if envelope <= envelope_limit else "warn"
    return BenchResult(solver, rows, exponent, envelope, status)
