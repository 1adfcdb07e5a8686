#!/usr/bin/env python3
"""Emit a seeded synthetic edge list plus a matching edge-event stream.

Example:
    python scripts/make_synthetic.py --model powerlaw --n 100000 --m 350000 \
        --seed 11 --out graph.txt --ops-out ops.txt --inserts 100 --removes 100
"""

from __future__ import annotations

import argparse

from corewatch.synth import event_stream, gnm_graph, powerlaw_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--model", choices=("powerlaw", "gnm"), default="powerlaw")
    ap.add_argument("--n", type=int, default=100000)
    ap.add_argument("--m", type=int, default=350000)
    ap.add_argument("--avg-degree", type=float, default=7.0, help="gnm only")
    ap.add_argument("--exponent", type=float, default=2.2, help="powerlaw only")
    ap.add_argument("--max-degree", type=int, default=1000, help="powerlaw only")
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--out", required=True)
    ap.add_argument("--ops-out", default=None)
    ap.add_argument("--inserts", type=int, default=100)
    ap.add_argument("--removes", type=int, default=100)
    args = ap.parse_args()

    if args.model == "powerlaw":
        g = powerlaw_graph(
            n=args.n,
            target_m=args.m,
            exponent=args.exponent,
            seed=args.seed,
            max_degree=args.max_degree,
        )
    else:
        g = gnm_graph(n=args.n, avg_degree=args.avg_degree, seed=args.seed)

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(f"# synthetic {args.model} n={g.vertex_count} m={g.edge_count} seed={args.seed}\n")
        for u, v in g.edges():
            fh.write(f"{g.labels[u]} {g.labels[v]}\n")
    print(f"wrote {args.out}: n={g.vertex_count} m={g.edge_count}")

    if args.ops_out:
        events = event_stream(g, inserts=args.inserts, removes=args.removes, seed=args.seed + 1)
        with open(args.ops_out, "w", encoding="utf-8") as fh:
            for op, u, v in events:
                fh.write(f"{op} {g.labels[u]} {g.labels[v]}\n")
        print(f"wrote {args.ops_out}: {len(events)} events")


if __name__ == "__main__":
    main()
