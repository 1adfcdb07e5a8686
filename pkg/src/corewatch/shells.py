"""Shell components: maximal connected same-coreness regions plus the
per-component collapser / anchor candidate sets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomp import CorenessState
from .graph import Graph

UNASSIGNED = -1


@dataclass
class ShellComponent:
    id: int
    shell_coreness: int
    members: set[int]
    internal_edges: set[tuple[int, int]]

    def __contains__(self, v: int) -> bool:
        return v in self.members


@dataclass
class ShellIndex:
    """Vertex -> component ownership plus candidate sets per live component.

    Component ids increase monotonically and are never reused, so retired ids
    stay recognizable to downstream stores.
    """

    owner: list[int]
    live: dict[int, ShellComponent] = field(default_factory=dict)
    collapser_candidates: dict[int, set[int]] = field(default_factory=dict)
    anchor_candidates: dict[int, set[int]] = field(default_factory=dict)
    next_id: int = 0

    def new_id(self) -> int:
        cid = self.next_id
        self.next_id += 1
        return cid


def _flood(
    g: Graph,
    coreness: list[int],
    owner: list[int],
    start: int,
    comp_id: int,
) -> tuple[ShellComponent, set[int], set[int], set[int]]:
    """Collect the shell component containing start, claiming ownership.

    Expands iteratively through equal-coreness neighbors. Vertices already
    owned by another live component are absorbed (their old component id is
    reported so the caller can retire it). Candidate sets are filled during
    the same traversal: higher-coreness outside neighbors join C[S],
    lower-coreness ones join A[S].
    """
    kc = coreness[start]
    members = {start}
    edges: set[tuple[int, int]] = set()
    collapsers: set[int] = set()
    anchors: set[int] = set()
    absorbed: set[int] = set()
    if owner[start] != UNASSIGNED and owner[start] != comp_id:
        absorbed.add(owner[start])
    owner[start] = comp_id
    stack = [start]
    adjacency = g.adjacency
    while stack:
        u = stack.pop()
        for v in adjacency[u]:
            cv = coreness[v]
            if cv == kc:
                if u < v:
                    edges.add((u, v))
                else:
                    edges.add((v, u))
                if owner[v] != comp_id:
                    if owner[v] != UNASSIGNED:
                        absorbed.add(owner[v])
                    owner[v] = comp_id
                    members.add(v)
                    stack.append(v)
            elif cv > kc:
                collapsers.add(v)
            else:
                anchors.add(v)
    collapsers |= members
    anchors |= members
    comp = ShellComponent(
        id=comp_id, shell_coreness=kc, members=members, internal_edges=edges
    )
    return comp, collapsers, anchors, absorbed


def shell_decompose(g: Graph, state: CorenessState) -> ShellIndex:
    """Partition all vertices into shell components and fill candidate sets."""
    n = g.vertex_count
    index = ShellIndex(owner=[UNASSIGNED] * n)
    for u in range(n):
        if index.owner[u] != UNASSIGNED:
            continue
        cid = index.new_id()
        comp, collapsers, anchors, absorbed = _flood(
            g, state.coreness, index.owner, u, cid
        )
        assert not absorbed  # nothing is live yet during a full rebuild
        index.live[cid] = comp
        index.collapser_candidates[cid] = collapsers
        index.anchor_candidates[cid] = anchors
    return index


def component_of(index: ShellIndex, v: int) -> ShellComponent:
    """The unique live component owning v."""
    if not 0 <= v < len(index.owner):
        raise IndexError(f"vertex id {v} out of range")
    cid = index.owner[v]
    comp = index.live.get(cid)
    if comp is None:
        raise RuntimeError(f"shell index is stale: vertex {v} owned by dead id {cid}")
    return comp


def candidate_sets_for(g: Graph, state: CorenessState, comp: ShellComponent) -> tuple[set[int], set[int]]:
    """Recompute C[S] and A[S] for one component by scanning member adjacency."""
    kc = comp.shell_coreness
    coreness = state.coreness
    collapsers = set(comp.members)
    anchors = set(comp.members)
    for u in comp.members:
        for v in g.adjacency[u]:
            cv = coreness[v]
            if cv > kc:
                collapsers.add(v)
            elif cv < kc:
                anchors.add(v)
    return collapsers, anchors
