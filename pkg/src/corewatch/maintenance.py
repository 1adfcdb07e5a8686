"""Incremental maintenance of coreness, shell components, candidate sets and
follower entries under single-edge insertions and removals."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .decomp import CorenessState, compute_layers, core_decompose
from .followers import FollowerStore, compute_all_followers
from .graph import Graph
from .shells import UNASSIGNED, ShellComponent, ShellIndex, _flood, shell_decompose

INSERT = "+"
REMOVE = "-"


@dataclass
class UpdateReport:
    """What one edge event changed."""

    u: int
    v: int
    op: str
    noop: bool = False
    coreness_changed: dict[int, tuple[int, int]] = field(default_factory=dict)
    retired_components: set[int] = field(default_factory=set)
    new_components: set[int] = field(default_factory=set)
    recomputed_components: set[int] = field(default_factory=set)
    updated_follower_vertices: int = 0


def maintain_coreness(
    g: Graph,
    state: CorenessState,
    edge: tuple[int, int],
    op: str,
    mode: str = "traversal",
    hs_changed: set[int] | None = None,
) -> dict[int, tuple[int, int]]:
    """Bring state.coreness in line with the already-mutated graph.

    Returns {vertex: (old, new)} for every vertex whose coreness moved (always
    by exactly one). Higher supports are refreshed for the edge endpoints,
    every changed vertex, and all their neighbors; layers are left to the
    component rebuild. mode "recompute" diffs against a fresh peel and must
    produce identical state to the traversal algorithms. If hs_changed is
    given, the ids whose higher support actually moved are added to it.
    """
    u, v = edge
    if mode == "recompute":
        fresh = core_decompose(g).coreness
        changed = {
            w: (state.coreness[w], fresh[w])
            for w in range(g.vertex_count)
            if state.coreness[w] != fresh[w]
        }
    elif mode == "traversal":
        if op == INSERT:
            changed = _insert_changes(g, state.coreness, u, v)
        elif op == REMOVE:
            changed = _remove_changes(g, state.coreness, u, v)
        else:
            raise ValueError(f"unknown edge operation {op!r}")
    else:
        raise ValueError(f"unknown core maintenance mode {mode!r}")

    for w, (_, new) in changed.items():
        state.coreness[w] = new

    affected = {u, v} | set(changed)
    for w in changed:
        affected.update(g.adjacency[w])
    coreness = state.coreness
    for w in affected:
        cw = coreness[w]
        fresh_hs = sum(1 for z in g.adjacency[w] if coreness[z] > cw)
        if fresh_hs != state.higher_support[w]:
            state.higher_support[w] = fresh_hs
            if hs_changed is not None:
                hs_changed.add(w)
    return changed


def _insert_changes(
    g: Graph, coreness: list[int], u: int, v: int
) -> dict[int, tuple[int, int]]:
    """Vertices rising to r+1 after inserting (u, v), r = min coreness.

    Only coreness-r vertices connected to the low endpoint(s) through
    coreness-r paths can rise; peel that region for the (r+1)-core where
    higher-coreness neighbors count as permanent support.
    """
    r = min(coreness[u], coreness[v])
    adjacency = g.adjacency
    region: set[int] = set()
    stack = [w for w in (u, v) if coreness[w] == r]
    region.update(stack)
    while stack:
        w = stack.pop()
        for z in adjacency[w]:
            if coreness[z] == r and z not in region:
                region.add(z)
                stack.append(z)

    support: dict[int, int] = {}
    for w in region:
        s = 0
        for z in adjacency[w]:
            if coreness[z] > r or z in region:
                s += 1
        support[w] = s
    alive = set(region)
    doomed = deque(w for w in region if support[w] < r + 1)
    while doomed:
        w = doomed.popleft()
        if w not in alive:
            continue
        alive.discard(w)
        for z in adjacency[w]:
            if z in alive:
                support[z] -= 1
                if support[z] < r + 1:
                    doomed.append(z)
    return {w: (r, r + 1) for w in alive}


def _remove_changes(
    g: Graph, coreness: list[int], u: int, v: int
) -> dict[int, tuple[int, int]]:
    """Vertices dropping to r-1 after removing (u, v), r = min coreness.

    Starting from the endpoint(s) of coreness r, cascade over coreness-r
    neighbors: a vertex drops when its support from higher-coreness and
    undropped equal-coreness neighbors falls below r.
    """
    r = min(coreness[u], coreness[v])
    adjacency = g.adjacency
    dropped: set[int] = set()
    queue: deque[int] = deque(w for w in (u, v) if coreness[w] == r)
    in_queue = set(queue)
    while queue:
        w = queue.popleft()
        in_queue.discard(w)
        if w not in dropped:
            s = 0
            for z in adjacency[w]:
                if coreness[z] > r or (coreness[z] == r and z not in dropped):
                    s += 1
                    if s >= r:
                        break
            if s < r:
                dropped.add(w)
        if w in dropped:
            for z in adjacency[w]:
                if coreness[z] == r and z not in dropped and z not in in_queue:
                    queue.append(z)
                    in_queue.add(z)
    return {w: (r, r - 1) for w in dropped}


def maintain_followers(
    g: Graph,
    state: CorenessState,
    index: ShellIndex,
    store: FollowerStore,
    edge: tuple[int, int],
    op: str,
    coreness_changed: dict[int, tuple[int, int]],
    workers: int = 1,
    hs_changed: set[int] | None = None,
) -> UpdateReport:
    """Rebuild affected shell components and refresh their follower entries.

    The flood is reseeded from the old components of both endpoints and every
    coreness-changed vertex; a flood absorbs (and thereby retires) any old
    component it touches, which covers merges with previously clean regions.

    DIRTY is exactly the rebuilt components. Surviving components are stable:
    a changed vertex can only cross a neighboring component's coreness level
    by landing on it, and then the flood absorbs (retires) that component; on
    either side of the level its candidacy, the members' higher supports, and
    the layer peel are all unaffected. The offline-equivalence suite certifies
    this for every event it replays.

    When hs_changed is supplied, a rebuilt component that is bit-identical to
    a retired one (same members, same coreness, same internal edges, no member
    with a moved higher support) keeps its old entries; only the endpoints'
    own entries are recomputed, since nothing else about any other candidate's
    relationship to the component can have moved.
    """
    u, v = edge
    owner = index.owner
    old_cids = {owner[u], owner[v]}
    seed_vertices: set[int] = set(coreness_changed)
    for cid in old_cids:
        seed_vertices.update(index.live[cid].members)

    # Stash the retired endpoint components for possible entry reuse.
    stash: list[tuple[ShellComponent, dict, dict]] = []
    if hs_changed is not None:
        for cid in old_cids:
            stash.append(
                (index.live[cid], store.collapsed.get(cid, {}), store.anchored.get(cid, {}))
            )

    retired = set(old_cids)
    for cid in old_cids:
        index.live.pop(cid)
        index.collapser_candidates.pop(cid)
        index.anchor_candidates.pop(cid)
    for w in seed_vertices:
        owner[w] = UNASSIGNED

    new_comps: set[int] = set()
    for s in sorted(seed_vertices):
        if owner[s] != UNASSIGNED:
            continue
        cid = index.new_id()
        comp, collapsers, anchors, absorbed = _flood(g, state.coreness, owner, s, cid)
        for dead in absorbed:
            retired.add(dead)
            index.live.pop(dead)
            index.collapser_candidates.pop(dead)
            index.anchor_candidates.pop(dead)
        index.live[cid] = comp
        index.collapser_candidates[cid] = collapsers
        index.anchor_candidates[cid] = anchors
        new_comps.add(cid)

    dirty = set(new_comps)

    # Per-component follower sets of one vertex are disjoint across components
    # (components partition V), so its aggregate changes exactly when its
    # union of entries over the touched components changes. Snapshot the dying
    # side before the purge; entries elsewhere cancel out.
    affected_x: set[int] = set()
    old_col: dict[int, set[int]] = {}
    old_anc: dict[int, set[int]] = {}
    for cid in retired:
        for x, tup in store.collapsed.get(cid, {}).items():
            affected_x.add(x)
            if tup:
                old_col.setdefault(x, set()).update(tup)
        for x, tup in store.anchored.get(cid, {}).items():
            affected_x.add(x)
            if tup:
                old_anc.setdefault(x, set()).update(tup)

    for cid in retired:
        store.drop_component(cid)

    for cid in sorted(dirty):
        for w, layer in compute_layers(index.live[cid], state).items():
            state.layer[w] = layer

    remaining = dirty
    if hs_changed is not None and stash:
        reused = _reuse_unchanged_components(
            g, state, index, store, stash, new_comps, (u, v), hs_changed
        )
        remaining = dirty - reused
    compute_all_followers(g, state, index, store, dirty=remaining, workers=workers)

    new_col: dict[int, set[int]] = {}
    new_anc: dict[int, set[int]] = {}
    for cid in dirty:
        for x, tup in store.collapsed[cid].items():
            affected_x.add(x)
            if tup:
                new_col.setdefault(x, set()).update(tup)
        for x, tup in store.anchored[cid].items():
            affected_x.add(x)
            if tup:
                new_anc.setdefault(x, set()).update(tup)
    empty: set[int] = set()
    updated = sum(
        1
        for x in affected_x
        if old_col.get(x, empty) != new_col.get(x, empty)
        or old_anc.get(x, empty) != new_anc.get(x, empty)
    )
    return UpdateReport(
        u=u,
        v=v,
        op=op,
        coreness_changed=coreness_changed,
        retired_components=retired,
        new_components=new_comps,
        recomputed_components=dirty,
        updated_follower_vertices=updated,
    )


def _reuse_unchanged_components(
    g: Graph,
    state: CorenessState,
    index: ShellIndex,
    store: FollowerStore,
    stash: list[tuple[ShellComponent, dict, dict]],
    new_comps: set[int],
    edge: tuple[int, int],
    hs_changed: set[int],
) -> set[int]:
    """Carry stale-proof entries over to rebuilt components.

    A rebuilt component matching a retired one in members, coreness, and
    internal edges, with no member higher-support movement, computes the same
    follower set for every candidate whose own adjacency to it is unchanged.
    Only the event's endpoints can have a changed adjacency, so only their
    entries (plus any brand-new candidate, defensively) are recomputed.
    """
    from .followers import ComponentView, find_anchored_followers, find_collapsed_followers

    reused: set[int] = set()
    endpoints = set(edge)
    for cid in new_comps:
        comp = index.live[cid]
        match = None
        for old_comp, old_col, old_anc in stash:
            if (
                old_comp.shell_coreness == comp.shell_coreness
                and old_comp.members == comp.members
                and old_comp.internal_edges == comp.internal_edges
            ):
                match = (old_col, old_anc)
                break
        if match is None or not hs_changed.isdisjoint(comp.members):
            continue
        old_col, old_anc = match
        view = None
        col: dict[int, tuple[int, ...]] = {}
        for x in sorted(index.collapser_candidates[cid]):
            if x not in endpoints and x in old_col:
                col[x] = old_col[x]
            else:
                if view is None:
                    view = ComponentView(comp, index, g, state)
                col[x] = tuple(
                    sorted(find_collapsed_followers(x, comp, index, state, g, view))
                )
        anc: dict[int, tuple[int, ...]] = {}
        for x in sorted(index.anchor_candidates[cid]):
            if x not in endpoints and x in old_anc:
                anc[x] = old_anc[x]
            else:
                if view is None:
                    view = ComponentView(comp, index, g, state)
                anc[x] = tuple(
                    sorted(find_anchored_followers(x, comp, index, state, g, view))
                )
        store.put_component(cid, col, anc)
        reused.add(cid)
    return reused


class FollowerEngine:
    """Owns the graph plus all derived state and keeps them consistent.

    Build it once offline, then feed single-edge events through apply(); the
    result always equals a from-scratch rebuild on the current graph.
    """

    def __init__(
        self, graph: Graph, workers: int = 1, core_mode: str = "traversal"
    ) -> None:
        if core_mode not in ("traversal", "recompute"):
            raise ValueError(f"unknown core maintenance mode {core_mode!r}")
        self.graph = graph
        self.workers = workers
        self.core_mode = core_mode
        self.state = core_decompose(graph)
        self.index = shell_decompose(graph, self.state)
        self.store = FollowerStore()
        compute_all_followers(
            graph, self.state, self.index, self.store, workers=workers
        )

    def add_vertex(self, label: str) -> int:
        """Create an isolated vertex with its own coreness-0 component."""
        vid = self.graph.add_vertex(label)
        self.state.coreness.append(0)
        self.state.layer.append(1)
        self.state.higher_support.append(0)
        cid = self.index.new_id()
        self.index.owner.append(cid)
        self.index.live[cid] = ShellComponent(
            id=cid, shell_coreness=0, members={vid}, internal_edges=set()
        )
        self.index.collapser_candidates[cid] = {vid}
        self.index.anchor_candidates[cid] = {vid}
        self.store.put_component(cid, {vid: ()}, {vid: ()})
        return vid

    def apply(self, op: str, u: int, v: int) -> UpdateReport:
        """Apply one edge event by internal ids and maintain all state."""
        if op == INSERT:
            mutated = self.graph.insert_edge(u, v)
        elif op == REMOVE:
            mutated = self.graph.remove_edge(u, v)
        else:
            raise ValueError(f"unknown edge operation {op!r}")
        if not mutated:
            return UpdateReport(u=u, v=v, op=op, noop=True)
        hs_changed: set[int] = set()
        changed = maintain_coreness(
            self.graph, self.state, (u, v), op, mode=self.core_mode, hs_changed=hs_changed
        )
        return maintain_followers(
            self.graph,
            self.state,
            self.index,
            self.store,
            (u, v),
            op,
            changed,
            workers=self.workers,
            hs_changed=hs_changed,
        )

    def apply_labels(self, op: str, lu: str, lv: str) -> UpdateReport:
        """Apply one edge event by external labels.

        Inserts create unseen vertices (vertex insertion is an edge sequence);
        removes with an unknown label are no-ops since the edge cannot exist.
        """
        u = self.graph.label_to_id.get(lu)
        v = self.graph.label_to_id.get(lv)
        if op == REMOVE and (u is None or v is None):
            return UpdateReport(
                u=-1 if u is None else u, v=-1 if v is None else v, op=op, noop=True
            )
        if u is None:
            u = self.add_vertex(lu)
        if v is None:
            v = self.add_vertex(lv)
        return self.apply(op, u, v)

    def label_id(self, label: str) -> int:
        vid = self.graph.label_to_id.get(label)
        if vid is None:
            raise KeyError(f"unknown vertex label {label!r}")
        return vid

    def followers_of(self, x: int) -> tuple[frozenset[int], frozenset[int]]:
        return self.store.followers_of(x, self.graph.vertex_count)

    def snapshot(self) -> dict:
        """Canonical view of all derived state, independent of component ids.

        Used by the offline-equivalence tests: two engines over equal graphs
        must produce equal snapshots.
        """
        comps = {}
        for cid, comp in self.index.live.items():
            key = frozenset(comp.members)
            comps[key] = (
                comp.shell_coreness,
                frozenset(comp.internal_edges),
                frozenset(self.index.collapser_candidates[cid]),
                frozenset(self.index.anchor_candidates[cid]),
            )
        n = self.graph.vertex_count
        return {
            "coreness": tuple(self.state.coreness),
            "layer": tuple(self.state.layer),
            "higher_support": tuple(self.state.higher_support),
            "components": comps,
            "collapsed": tuple(self.store.collapsed_followers(x) for x in range(n)),
            "anchored": tuple(self.store.anchored_followers(x) for x in range(n)),
        }
