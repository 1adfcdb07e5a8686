"""Seeded synthetic graphs and edge-event streams for tests and benchmarks."""

from __future__ import annotations

import bisect
import random

from .graph import Graph


def gnm_graph(n: int, avg_degree: float, seed: int) -> Graph:
    """Erdos-Renyi style G(n, m) with m = round(n * avg_degree / 2)."""
    rng = random.Random(seed)
    m = round(n * avg_degree / 2)
    m = min(m, n * (n - 1) // 2)
    g = Graph()
    for i in range(n):
        g.add_vertex(str(i))
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        e = (u, v) if u < v else (v, u)
        if e not in edges:
            edges.add(e)
            g.insert_edge(*e)
    return g


def powerlaw_graph(
    n: int,
    target_m: int,
    exponent: float = 2.2,
    seed: int = 0,
    max_degree: int = 1000,
) -> Graph:
    """Chung-Lu style graph with power-law expected degrees.

    Degree heterogeneity spreads coreness over many shells, which keeps shell
    components small the way real social graphs do; that is the regime the
    maintenance speedup is about. max_degree caps hubs at a realistic size
    (Brightkite tops out near 1100).
    """
    rng = random.Random(seed)
    weights = [(i + 1.0) ** (-1.0 / (exponent - 1.0)) for i in range(n)]
    cumulative = []
    total = 0.0
    for w in weights:
        total += w
        cumulative.append(total)

    def draw() -> int:
        return bisect.bisect_left(cumulative, rng.random() * total)

    g = Graph()
    for i in range(n):
        g.add_vertex(str(i))
    edges: set[tuple[int, int]] = set()
    attempts = 0
    limit = target_m * 30
    while len(edges) < target_m and attempts < limit:
        attempts += 1
        u = draw()
        v = draw()
        if u == v:
            continue
        if len(g.adjacency[u]) >= max_degree or len(g.adjacency[v]) >= max_degree:
            continue
        e = (u, v) if u < v else (v, u)
        if e not in edges:
            edges.add(e)
            g.insert_edge(*e)
    return g


def event_stream(
    g: Graph, inserts: int, removes: int, seed: int
) -> list[tuple[str, int, int]]:
    """Random single-edge events against g: removals of existing edges and
    insertions of fresh non-edges, shuffled into one stream."""
    rng = random.Random(seed)
    existing = sorted(g.edges())
    removes = min(removes, len(existing))
    remove_edges = rng.sample(existing, removes)
    n = g.vertex_count
    present = set(existing)
    insert_edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    while len(insert_edges) < inserts:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        e = (u, v) if u < v else (v, u)
        if e in present or e in seen:
            continue
        seen.add(e)
        insert_edges.append(e)
    events = [("-", u, v) for u, v in remove_edges]
    events += [("+", u, v) for u, v in insert_edges]
    rng.shuffle(events)
    return events
