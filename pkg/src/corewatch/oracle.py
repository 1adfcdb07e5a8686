"""Brute-force reference implementations of the coreness definitions.

Everything here recomputes from first principles (repeated peel rounds over a
throwaway adjacency copy) and shares no algorithmic machinery with the main
engine. Quadratic behavior is fine; these functions exist so tests have an
independent source of truth. Keep full per-vertex sweeps to n <= 2000.
"""

from __future__ import annotations

from .graph import Graph


def _adjacency_copy(g: Graph) -> dict[int, set[int]]:
    return {u: set(nbrs) for u, nbrs in enumerate(g.adjacency)}


def _peel(adj: dict[int, set[int]], anchored: int | None = None) -> dict[int, int]:
    """Iteratively delete vertices with degree < k for k = 1, 2, ...

    A deleted vertex gets coreness k - 1. If anchored is given, that vertex is
    never deleted (its degree counts as infinite) and receives no coreness.
    """
    alive = set(adj)
    deg = {u: len(nbrs) for u, nbrs in adj.items()}
    coreness: dict[int, int] = {}
    k = 1
    while alive - ({anchored} if anchored is not None else set()):
        doomed = [u for u in alive if u != anchored and deg[u] < k]
        while doomed:
            u = doomed.pop()
            if u not in alive:
                continue
            alive.discard(u)
            coreness[u] = k - 1
            for v in adj[u]:
                if v in alive:
                    deg[v] -= 1
                    if v != anchored and deg[v] < k:
                        doomed.append(v)
        k += 1
    return coreness


def oracle_coreness(g: Graph) -> dict[int, int]:
    """Coreness of every vertex by the naive repeated-deletion peel."""
    return _peel(_adjacency_copy(g))


def oracle_collapsed_coreness(g: Graph, x: int) -> dict[int, int]:
    """Coreness of every vertex other than x after deleting x and its edges."""
    adj = _adjacency_copy(g)
    for v in adj[x]:
        adj[v].discard(x)
    del adj[x]
    return _peel(adj)


def oracle_anchored_coreness(g: Graph, x: int) -> dict[int, int]:
    """Coreness of every vertex other than x with x treated as undeletable."""
    return _peel(_adjacency_copy(g), anchored=x)


def oracle_collapsed_followers(g: Graph, x: int) -> set[int]:
    """Vertices whose coreness drops when x is collapsed."""
    base = oracle_coreness(g)
    after = oracle_collapsed_coreness(g, x)
    return {u for u, c in after.items() if c < base[u]}


def oracle_anchored_followers(g: Graph, x: int) -> set[int]:
    """Vertices whose coreness rises when x is anchored."""
    base = oracle_coreness(g)
    after = oracle_anchored_coreness(g, x)
    return {u for u, c in after.items() if u != x and c > base[u]}
