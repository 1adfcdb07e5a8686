#!/usr/bin/env python3
"""Offline-vs-maintenance timing on a synthetic graph.

Reproduces the experiment shape from the evaluation: time the offline
follower computation at several worker counts, then replay random edge
events through the incremental engine and compare mean per-event time
against the full offline rebuild.

    python scripts/bench_maintenance.py --n 100000 --m 350000 --events 100
"""

from __future__ import annotations

import argparse
import json
import time

from corewatch.decomp import core_decompose
from corewatch.followers import FollowerStore, compute_all_followers
from corewatch.maintenance import FollowerEngine
from corewatch.shells import shell_decompose
from corewatch.synth import event_stream, powerlaw_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100000)
    ap.add_argument("--m", type=int, default=350000)
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--events", type=int, default=100, help="inserts and removes each")
    ap.add_argument("--threads", type=int, nargs="*", default=[1, 2, 4])
    args = ap.parse_args()

    g = powerlaw_graph(n=args.n, target_m=args.m, exponent=2.2, seed=args.seed)
    print(f"graph: n={g.vertex_count} m={g.edge_count}")

    t0 = time.perf_counter()
    state = core_decompose(g)
    index = shell_decompose(g, state)
    prep = time.perf_counter() - t0
    print(f"decompose+shell: {prep:.2f}s  k_max={state.k_max} comps={len(index.live)}")

    follower_base = None
    for threads in args.threads:
        store = FollowerStore()
        t0 = time.perf_counter()
        compute_all_followers(g, state, index, store, workers=threads)
        dt = time.perf_counter() - t0
        if follower_base is None:
            follower_base = dt
        print(f"followers @ {threads} workers: {dt:.2f}s (x{dt / follower_base:.2f})")

    t0 = time.perf_counter()
    engine = FollowerEngine(g.copy(), workers=1)
    offline_total = time.perf_counter() - t0
    print(f"offline pipeline total (1 worker): {offline_total:.2f}s")

    events = event_stream(g, inserts=args.events, removes=args.events, seed=args.seed + 1)
    times = []
    for op, u, v in events:
        t0 = time.perf_counter()
        engine.apply(op, u, v)
        times.append(time.perf_counter() - t0)
    times.sort()
    mean = sum(times) / len(times)
    print(
        json.dumps(
            {
                "events": len(times),
                "mean_ms": round(mean * 1000, 3),
                "min_ms": round(times[0] * 1000, 4),
                "median_ms": round(times[len(times) // 2] * 1000, 3),
                "max_ms": round(times[-1] * 1000, 1),
                "offline_seconds": round(offline_total, 2),
                "speedup_vs_offline": round(offline_total / mean, 1),
            },
            indent=2,
        )
    )


if __name__ == "__main__":
    main()
