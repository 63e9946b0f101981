"""``dyndom`` command line: run, verify, gen, bench."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .errors import ParseError
from .graph import UpdateTrace, load_trace, serialize_trace
from .harness import SOLVERS, parse_gen_spec, run, scaling_bench, trace_from_gen

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--trace", metavar="FILE", help="trace file to replay")
    src.add_argument("--gen", metavar="SPEC", help="generate: n=..,steps=..,pdel=..,seed=..[,hubs=..]")


def _add_replay(p: argparse.ArgumentParser, verify_default: int) -> None:
    p.add_argument("--solver", choices=SOLVERS, default="mds")
    _add_source(p)
    p.add_argument("--verify-every", type=int, default=verify_default, metavar="K",
                   help=f"run the oracles every K events, 0 disables (default {verify_default})")
    p.add_argument("--backend", choices=("naive", "leveled"), default="leveled")
    p.add_argument("--metrics", metavar="PATH", help="write checkpoint metrics as CSV")
    p.add_argument("--checkpoint-every", type=int, default=100, metavar="K")
    p.add_argument("--seed", type=int, default=0, help="generator seed when --gen omits seed=")
    p.add_argument("--snapshot", metavar="PATH", default="dyndom-failure.txt",
                   help="where to dump state on an oracle violation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyndom", description="Dynamic dominating set solvers.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_replay(sub.add_parser("run", help="replay a trace through a solver"), 0)
    _add_replay(sub.add_parser("verify", help="replay with oracle checks (every event by default)"), 1)

    gen = sub.add_parser("gen", help="write a generated trace")
    gen.add_argument("--gen", metavar="SPEC", required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--out", metavar="FILE", help="output path (default stdout)")

    bench = sub.add_parser("bench", help="per-update time across a doubling schedule")
    bench.add_argument("--solver", choices=SOLVERS, default="mds")
    bench.add_argument("--sizes", default="64,128,256,512")
    bench.add_argument("--steps-per-vertex", type=int, default=8)
    bench.add_argument("--pdel", type=float, default=0.0)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--backend", choices=("naive", "leveled"), default="leveled")
    return parser


def _load(args: argparse.Namespace, parser: argparse.ArgumentParser) -> UpdateTrace:
    if getattr(args, "trace", None):
        return load_trace(args.trace)
    try:
        spec = parse_gen_spec(args.gen)
        return trace_from_gen(spec, args.seed)
    except ValueError as exc:
        parser.error(str(exc))
        raise  # unreachable; parser.error exits


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            trace = _load(args, parser)
            text = serialize_trace(trace)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "bench":
            try:
                sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
            except ValueError:
                parser.error(f"bad --sizes {args.sizes!r}")
            result = scaling_bench(args.solver, sizes, args.steps_per_vertex, args.pdel,
                                   args.seed, args.backend)
            print(result.table())
            return EXIT_OK
        if args.verify_every < 0 or args.checkpoint_every < 0:
            parser.error("intervals must be non-negative")
        trace = _load(args, parser)
        result = run(
            trace,
            args.solver,
            backend=args.backend,
            verify_every=args.verify_every,
            checkpoint_every=args.checkpoint_every,
            metrics_path=args.metrics,
            snapshot_path=args.snapshot,
        )
    except ParseError as exc:
        print(f"dyndom: parse error at line {exc.line}: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"dyndom: {exc}", file=sys.stderr)
        return EXIT_USAGE
    last = result.rows[-1] if result.rows else {}
    if result.ok:
        print(
            f"ok: {result.events_applied} events, solver {args.solver}, "
            f"|D|={last.get('dsize')} |C|={last.get('csize')} |D~|={last.get('dtsize')}"
        )
        return EXIT_OK
    what = result.error or ",".join(result.report.failed() if result.report else [])
    print(f"violation at event {result.failure_index}: {what}", file=sys.stderr)
    if result.report is not None:
        for line in result.report.details[:10]:
            print(f"  {line}", file=sys.stderr)
    print(f"state snapshot: {result.snapshot_path}", file=sys.stderr)
    return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
