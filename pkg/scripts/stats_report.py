#!/usr/bin/env python3
"""Valid collapser/anchor percentages and the coreness-bucketed follower
distribution for an edge-list file (the effectiveness experiment tables).

    python scripts/stats_report.py --input graph.txt --threads 4
"""

from __future__ import annotations

import argparse
import json

from corewatch.cli import build_stats
from corewatch.graph import load_edge_list
from corewatch.maintenance import FollowerEngine


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", required=True)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    with open(args.input, "r", encoding="utf-8") as fh:
        g = load_edge_list(fh)
    engine = FollowerEngine(g, workers=args.threads)
    report = build_stats(engine)
    print(json.dumps(report.to_json(), indent=2))


if __name__ == "__main__":
    main()
