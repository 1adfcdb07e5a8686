"""Coreness, layer values, and higher-coreness supports via bucket peeling."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .graph import Graph

if TYPE_CHECKING:  # pragma: no cover
    from .shells import ShellComponent


@dataclass
class CorenessState:
    """Per-vertex coreness c(u), layer value l(u), and higher support HS(u).

    higher_support[u] counts u's neighbors with strictly greater coreness.
    layer[u] is the 1-based index of the deletion batch in which u leaves the
    peel during its own shell's stage.
    """

    coreness: list[int]
    layer: list[int]
    higher_support: list[int]
    peel_edge_visits: int = field(default=0, compare=False)

    @property
    def k_max(self) -> int:
        return max(self.coreness, default=0)


def core_decompose(g: Graph, order_seed: int | None = None) -> CorenessState:
    """Peel g with a bucket queue and record coreness, layers, and supports.

    order_seed only permutes tie-breaking among equal-degree vertices; the
    resulting coreness values must not depend on it. The graph itself is
    untouched (peeling runs on a scratch degree array).
    """
    n = g.vertex_count
    adjacency = g.adjacency
    deg = [len(adjacency[u]) for u in range(n)]
    coreness = [0] * n
    visits = 0

    order = list(range(n))
    if order_seed is not None:
        random.Random(order_seed).shuffle(order)

    # Lazy bucket queue: vertices are re-pushed as their degree drops and
    # stale entries are skipped on pop.
    max_deg = max(deg, default=0)
    buckets: list[list[int]] = [[] for _ in range(max_deg + 1)]
    for u in order:
        buckets[deg[u]].append(u)
    removed = [False] * n
    k = 0
    remaining = n
    while remaining:
        while k <= max_deg and not buckets[k]:
            k += 1
        u = buckets[k].pop()
        if removed[u] or deg[u] != k:
            continue  # stale entry
        removed[u] = True
        remaining -= 1
        coreness[u] = k
        for v in adjacency[u]:
            visits += 1
            if not removed[v] and deg[v] > k:
                # Clamp at k so deg[] never falls below the current level.
                deg[v] -= 1
                buckets[deg[v]].append(v)

    higher_support = _higher_supports(g, coreness)
    layer = _layer_values(g, coreness, higher_support)
    return CorenessState(
        coreness=coreness,
        layer=layer,
        higher_support=higher_support,
        peel_edge_visits=visits,
    )


def _higher_supports(g: Graph, coreness: list[int]) -> list[int]:
    hs = [0] * g.vertex_count
    for u, nbrs in enumerate(g.adjacency):
        cu = coreness[u]
        hs[u] = sum(1 for v in nbrs if coreness[v] > cu)
    return hs


def _layer_values(g: Graph, coreness: list[int], higher_support: list[int]) -> list[int]:
    """Batch-peel each shell to assign 1-based layer values.

    Within the stage for shell k, the available degree of u is the count of
    neighbors with coreness >= k that are still undeleted; each batch removes
    all vertices below k+1 simultaneously.
    """
    n = g.vertex_count
    adjacency = g.adjacency
    layer = [0] * n
    avail = [0] * n
    for u, nbrs in enumerate(adjacency):
        cu = coreness[u]
        avail[u] = higher_support[u] + sum(1 for v in nbrs if coreness[v] == cu)

    shells: dict[int, list[int]] = {}
    for u in range(n):
        shells.setdefault(coreness[u], []).append(u)

    for k, members in shells.items():
        threshold = k + 1
        batch = [u for u in members if avail[u] < threshold]
        queued = set(batch)
        index = 1
        while batch:
            for u in batch:
                layer[u] = index
            next_batch: list[int] = []
            for u in batch:
                for v in adjacency[u]:
                    if coreness[v] == k and layer[v] == 0:
                        avail[v] -= 1
                        if avail[v] < threshold and v not in queued:
                            queued.add(v)
                            next_batch.append(v)
            batch = next_batch
            index += 1
    return layer


def k_core_membership(state: CorenessState, k: int) -> set[int]:
    """Vertices of the k-core: everyone with coreness >= k."""
    return {u for u, c in enumerate(state.coreness) if c >= k}


def compute_layers(component: "ShellComponent", state: CorenessState) -> dict[int, int]:
    """Recompute layer values for one shell component from its internal edges.

    Available degree of v is HS(v) plus its undeleted in-component neighbors;
    batches delete everything below S.c + 1 at once. Equal-coreness neighbors
    always share a component, so this matches the global per-shell batches.
    """
    threshold = component.shell_coreness + 1
    hs = state.higher_support
    nbrs: dict[int, list[int]] = {u: [] for u in component.members}
    for u, v in component.internal_edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    avail = {u: hs[u] + len(nbrs[u]) for u in component.members}
    layers: dict[int, int] = {}
    batch = [u for u in component.members if avail[u] < threshold]
    queued = set(batch)
    index = 1
    while batch:
        for u in batch:
            layers[u] = index
        next_batch: list[int] = []
        for u in batch:
            for v in nbrs[u]:
                if v not in layers:
                    avail[v] -= 1
                    if avail[v] < threshold and v not in queued:
                        queued.add(v)
                        next_batch.append(v)
        batch = next_batch
        index += 1
    return layers
