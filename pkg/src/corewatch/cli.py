"""Command-line surface: decompose, followers, stream, stats, bench."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .decomp import core_decompose
from .followers import FollowerStore, compute_all_followers
from .graph import EdgeListParseError, Graph, load_edge_list
from .maintenance import FollowerEngine
from .shells import shell_decompose


@dataclass
class StatsReport:
    """Vertex-level influence statistics for one graph."""

    n: int
    m: int
    k_max: int
    d_avg: float
    d_max: int
    valid_collapser_pct: float
    valid_anchor_pct: float
    histogram: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "k_max": self.k_max,
            "d_avg": self.d_avg,
            "d_max": self.d_max,
            "valid_collapser_pct": self.valid_collapser_pct,
            "valid_anchor_pct": self.valid_anchor_pct,
            "histogram": self.histogram,
        }


def coreness_buckets(k_max: int) -> list[tuple[int, int]]:
    """Split [1, k_max] into 20 equal integer-width intervals, folding the
    leftover range into the last one. Below 20 the buckets have width 1."""
    if k_max < 1:
        return []
    if k_max < 20:
        return [(i, i) for i in range(1, k_max + 1)]
    width = k_max // 20
    buckets = []
    lo = 1
    for i in range(19):
        buckets.append((lo, lo + width - 1))
        lo += width
    buckets.append((lo, k_max))
    return buckets


def build_stats(engine: FollowerEngine) -> StatsReport:
    g = engine.graph
    n = g.vertex_count
    coreness = engine.state.coreness
    k_max = max(coreness, default=0)
    valid_col = 0
    valid_anc = 0
    col_counts = [0] * n
    anc_counts = [0] * n
    for x in range(n):
        col, anc = engine.followers_of(x)
        col_counts[x] = len(col)
        anc_counts[x] = len(anc)
        if col:
            valid_col += 1
        if anc:
            valid_anc += 1
    rows: list[dict] = []
    for lo, hi in coreness_buckets(k_max):
        members = [x for x in range(n) if lo <= coreness[x] <= hi]
        count = len(members)
        rows.append(
            {
                "coreness_lo": lo,
                "coreness_hi": hi,
                "vertices": count,
                "mean_collapsed": (
                    sum(col_counts[x] for x in members) / count if count else 0.0
                ),
                "mean_anchored": (
                    sum(anc_counts[x] for x in members) / count if count else 0.0
                ),
            }
        )
    d_max = max((len(s) for s in g.adjacency), default=0)
    return StatsReport(
        n=n,
        m=g.edge_count,
        k_max=k_max,
        d_avg=(2 * g.edge_count / n) if n else 0.0,
        d_max=d_max,
        valid_collapser_pct=(100.0 * valid_col / n) if n else 0.0,
        valid_anchor_pct=(100.0 * valid_anc / n) if n else 0.0,
        histogram=rows,
    )


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh)


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _component_label(g: Graph, index, v: int) -> str:
    """Components are surfaced as their smallest member label so outputs stay
    comparable across ingestion orders and maintenance histories."""
    members = index.live[index.owner[v]].members
    return min(g.labels[w] for w in members)


def _vertex_rows(g: Graph, state, index) -> list[dict]:
    rows = []
    for v in range(g.vertex_count):
        rows.append(
            {
                "vertex": g.labels[v],
                "coreness": state.coreness[v],
                "layer": state.layer[v],
                "higher_support": state.higher_support[v],
                "component": _component_label(g, index, v),
            }
        )
    rows.sort(key=lambda r: r["vertex"])
    return rows


def _follower_record(engine: FollowerEngine, v: int) -> dict:
    labels = engine.graph.labels
    col, anc = engine.followers_of(v)
    return {
        "vertex": labels[v],
        "collapsed": sorted(labels[w] for w in col),
        "anchored": sorted(labels[w] for w in anc),
    }


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    state = core_decompose(g)
    index = shell_decompose(g, state)
    rows = _vertex_rows(g, state, index)
    out, close = _open_out(args.output)
    try:
        if args.format == "json":
            json.dump(
                {
                    "n": g.vertex_count,
                    "m": g.edge_count,
                    "k_max": state.k_max,
                    "vertices": rows,
                },
                out,
                indent=2,
            )
            out.write("\n")
        else:
            out.write("vertex\tcoreness\tlayer\thigher_support\tcomponent\n")
            for r in rows:
                out.write(
                    f"{r['vertex']}\t{r['coreness']}\t{r['layer']}"
                    f"\t{r['higher_support']}\t{r['component']}\n"
                )
    finally:
        if close:
            out.close()
    return 0


def cmd_followers(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    engine = FollowerEngine(g, workers=args.threads)
    if args.all:
        targets = sorted(range(g.vertex_count), key=lambda v: g.labels[v])
    else:
        vid = g.label_to_id.get(args.vertex)
        if vid is None:
            print(f"error: unknown vertex label {args.vertex!r}", file=sys.stderr)
            return 1
        targets = [vid]
    records = [_follower_record(engine, v) for v in targets]
    out, close = _open_out(args.output)
    try:
        json.dump({"vertices": records}, out, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def _parse_ops(path: str) -> list[tuple[str, str, str]]:
    ops = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] not in ("+", "-"):
                raise EdgeListParseError(lineno, raw.rstrip("\n"))
            ops.append((parts[0], parts[1], parts[2]))
    return ops


def cmd_stream(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    ops = _parse_ops(args.ops)
    engine = FollowerEngine(g, workers=args.threads)
    labels = engine.graph.labels
    updated_counts: list[int] = []
    out, close = _open_out(args.output)
    try:
        for i, (op, lu, lv) in enumerate(ops):
            report = engine.apply_labels(op, lu, lv)
            updated_counts.append(report.updated_follower_vertices)
            line = {
                "event": i,
                "op": op,
                "u": lu,
                "v": lv,
                "noop": report.noop,
                "coreness_changed": {
                    labels[w]: [old, new]
                    for w, (old, new) in sorted(report.coreness_changed.items())
                },
                "retired_components": len(report.retired_components),
                "new_components": len(report.new_components),
                "recomputed_components": len(report.recomputed_components),
                "updated_follower_vertices": report.updated_follower_vertices,
            }
            out.write(json.dumps(line) + "\n")
        summary = {
            "type": "summary",
            "n": engine.graph.vertex_count,
            "m": engine.graph.edge_count,
            "k_max": engine.state.k_max,
            "events": len(ops),
            "updated_vertices": {
                "min": min(updated_counts, default=0),
                "mean": (
                    sum(updated_counts) / len(updated_counts) if updated_counts else 0.0
                ),
                "max": max(updated_counts, default=0),
            },
            "vertices": [
                {**row, **_follower_fields(engine, row["vertex"])}
                for row in _vertex_rows(engine.graph, engine.state, engine.index)
            ],
        }
        out.write(json.dumps(summary) + "\n")
    finally:
        if close:
            out.close()
    return 0


def _follower_fields(engine: FollowerEngine, label: str) -> dict:
    rec = _follower_record(engine, engine.graph.label_to_id[label])
    return {"collapsed": rec["collapsed"], "anchored": rec["anchored"]}


def cmd_stats(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    engine = FollowerEngine(g, workers=args.threads)
    report = build_stats(engine)
    out, close = _open_out(args.output)
    try:
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()
    hist_path = args.histogram
    if hist_path is None and args.output not in (None, "-"):
        hist_path = args.output + ".hist.tsv"
    if hist_path:
        with open(hist_path, "w", encoding="utf-8") as fh:
            fh.write("coreness_lo\tcoreness_hi\tvertices\tmean_collapsed\tmean_anchored\n")
            for row in report.histogram:
                fh.write(
                    f"{row['coreness_lo']}\t{row['coreness_hi']}\t{row['vertices']}"
                    f"\t{row['mean_collapsed']:.6g}\t{row['mean_anchored']:.6g}\n"
                )
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    ops = _parse_ops(args.ops) if args.ops else []

    thread_plan = []
    t = 1
    while t < args.threads:
        thread_plan.append(t)
        t *= 2
    thread_plan.append(args.threads)

    offline_rows = []
    stores: dict[int, FollowerStore] = {}
    state = core_decompose(g)
    index = shell_decompose(g, state)
    for threads in thread_plan:
        store = FollowerStore()
        t0 = time.perf_counter()
        compute_all_followers(g, state, index, store, workers=threads)
        offline_rows.append(
            {"threads": threads, "follower_seconds": time.perf_counter() - t0}
        )
        stores[threads] = store
    base = stores[thread_plan[0]]
    outputs_identical = all(
        s.collapsed == base.collapsed and s.anchored == base.anchored
        for s in stores.values()
    )
    stores.clear()

    t0 = time.perf_counter()
    engine = FollowerEngine(g.copy(), workers=1)
    offline_total = time.perf_counter() - t0

    event_times: list[float] = []
    for op, lu, lv in ops:
        t0 = time.perf_counter()
        engine.apply_labels(op, lu, lv)
        event_times.append(time.perf_counter() - t0)

    result: dict = {
        "n": g.vertex_count,
        "m": g.edge_count,
        "offline": offline_rows,
        "offline_total_seconds_1thread": offline_total,
        "outputs_identical": outputs_identical,
    }
    if event_times:
        mean = sum(event_times) / len(event_times)
        result["maintenance"] = {
            "events": len(event_times),
            "min_seconds": min(event_times),
            "mean_seconds": mean,
            "max_seconds": max(event_times),
        }
        result["speedup_vs_offline_1thread"] = offline_total / mean if mean else None
    out, close = _open_out(args.output)
    try:
        json.dump(result, out, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corewatch",
        description=(
            "Per-vertex engagement influence on k-core structure: which "
            "vertices lose coreness if one is weakened, and which gain if "
            "it is strengthened."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    default_threads = os.cpu_count() or 1

    p = sub.add_parser("decompose", help="coreness, layers, supports, components")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("followers", help="collapsed/anchored follower sets")
    p.add_argument("--input", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--vertex", help="one vertex label")
    group.add_argument("--all", action="store_true")
    p.add_argument("--threads", type=int, default=default_threads)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_followers)

    p = sub.add_parser("stream", help="apply edge events and report updates")
    p.add_argument("--input", required=True)
    p.add_argument("--ops", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("stats", help="valid collapser/anchor percentages and histogram")
    p.add_argument("--input", required=True)
    p.add_argument("--threads", type=int, default=default_threads)
    p.add_argument("--output", default=None)
    p.add_argument("--histogram", default=None, help="TSV path for the bucket table")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="offline vs maintenance timing")
    p.add_argument("--input", required=True)
    p.add_argument("--ops", default=None)
    p.add_argument("--threads", type=int, default=default_threads)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EdgeListParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
