"""Collapsed/anchored follower computation per (candidate, component) pair.

The two searches are local: they start from the candidate's insertion points
in a component and only expand while vertex verdicts keep changing. All
support adjustments go through a per-invocation SupportOverlay so concurrent
searches never write shared state. A ComponentView is built once per
component and shared across its many candidates, keeping every search on
component-local adjacency (a hub member's full neighbor list is scanned once
per component, not once per candidate).

Parallel runs fork workers that read a flat array snapshot of the graph and
index (CSR adjacency plus per-vertex arrays). Plain Python object graphs are
poison for forked workers: every refcount touch copy-on-writes a page, which
costs more than the computation itself. Array buffers stay clean under reads.
"""

from __future__ import annotations

import heapq
import multiprocessing
from array import array
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .decomp import CorenessState
from .graph import Graph
from .shells import ShellComponent, ShellIndex


class SupportOverlay:
    """Scratch view over the shared higher-support values for one search.

    base is the read-only per-vertex higher-support sequence; deltas holds
    sparse per-vertex adjustments; discarded/survived hold the invocation's
    vertex verdicts. Nothing here outlives one search and base is never
    written.
    """

    __slots__ = ("base", "deltas", "discarded", "survived")

    def __init__(self, base_support: Sequence[int]) -> None:
        self.base = base_support
        self.deltas: dict[int, int] = {}
        self.discarded: set[int] = set()
        self.survived: set[int] = set()

    def support(self, u: int) -> int:
        return self.base[u] + self.deltas.get(u, 0)

    def adjust(self, u: int, amount: int) -> None:
        self.deltas[u] = self.deltas.get(u, 0) + amount

    def mark_of(self, u: int) -> str:
        if u in self.discarded:
            return "discarded"
        if u in self.survived:
            return "survived"
        return "unexplored"


class ComponentView:
    """Component-local adjacency shared by all candidate searches of one
    component: member -> in-component neighbors, outside candidate -> its
    neighbors inside the component, and each member's maximum possible
    support (higher support plus in-component degree)."""

    __slots__ = ("cid", "shell_coreness", "members", "nbrs", "outside", "avail")

    def __init__(
        self,
        comp: ShellComponent,
        index: ShellIndex,
        g: Graph,
        state: CorenessState | None = None,
    ) -> None:
        self.cid = comp.id
        self.shell_coreness = comp.shell_coreness
        self.members = comp.members
        nbrs: dict[int, list[int]] = {u: [] for u in comp.members}
        for u, v in comp.internal_edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.nbrs = nbrs
        outside: dict[int, list[int]] = {}
        owner = index.owner
        cid = comp.id
        for u in comp.members:
            for v in g.adjacency[u]:
                if owner[v] != cid:
                    outside.setdefault(v, []).append(u)
        self.outside = outside
        self.avail: dict[int, int] = {}
        if state is not None:
            self.fill_avail(state.higher_support)

    @classmethod
    def from_arrays(
        cls,
        cid: int,
        shell_coreness: int,
        member_list: Sequence[int],
        indptr: Sequence[int],
        indices: list,
        owner: Sequence[int],
        hs: Sequence[int],
    ) -> "ComponentView":
        view = cls.__new__(cls)
        view.cid = cid
        view.shell_coreness = shell_coreness
        view.members = set(member_list)
        nbrs: dict[int, list[int]] = {}
        outside: dict[int, list[int]] = {}
        for u in member_list:
            lst = []
            for v in indices[indptr[u] : indptr[u + 1]]:
                if owner[v] == cid:
                    lst.append(v)
                else:
                    outside.setdefault(v, []).append(u)
            nbrs[u] = lst
        view.nbrs = nbrs
        view.outside = outside
        view.avail = {}
        view.fill_avail(hs)
        return view

    def fill_avail(self, hs: Sequence[int]) -> None:
        self.avail = {u: hs[u] + len(lst) for u, lst in self.nbrs.items()}

    def seeds_of(self, x: int) -> list[int]:
        """N(x) inside the component for an outside candidate x."""
        return self.outside.get(x, [])


def _collapsed_body(x: int, view: ComponentView, hs: Sequence[int]) -> set[int]:
    kc = view.shell_coreness
    nbrs = view.nbrs
    avail = view.avail
    # A search can only discard somebody if one of its entry points can fall
    # below the threshold after losing a single support.
    member = x in nbrs
    if member:
        if all(avail[v] - 1 >= kc for v in nbrs[x]):
            return set()
        seeds: list[int] = []
    else:
        seeds = view.seeds_of(x)
        if all(avail[u] - 1 >= kc for u in seeds):
            return set()

    overlay = SupportOverlay(hs)
    deltas = overlay.deltas
    discarded = overlay.discarded
    queue: deque[int] = deque()
    in_queue: set[int] = set()
    if member:
        discarded.add(x)
        queue.append(x)
        in_queue.add(x)
    else:
        for u in seeds:
            deltas[u] = deltas.get(u, 0) - 1
            queue.append(u)
            in_queue.add(u)

    while queue:
        u = queue.popleft()
        in_queue.discard(u)
        if u != x and u not in discarded:
            d = hs[u] + deltas.get(u, 0)
            if d < kc:
                for v in nbrs[u]:
                    if v not in discarded:
                        d += 1
                        if d >= kc:
                            break
            if d < kc:
                discarded.add(u)
        if u in discarded:
            for v in nbrs[u]:
                if v not in discarded and v not in in_queue:
                    queue.append(v)
                    in_queue.add(v)
    discarded.discard(x)
    return discarded


def find_collapsed_followers(
    x: int,
    comp: ShellComponent,
    index: ShellIndex,
    state: CorenessState,
    g: Graph,
    view: ComponentView | None = None,
) -> set[int]:
    """Members of comp whose coreness would drop by one if x were collapsed."""
    if x not in index.collapser_candidates[comp.id]:
        raise ValueError(
            f"vertex {x} is not a collapser candidate of component {comp.id}"
        )
    if view is None:
        view = ComponentView(comp, index, g, state)
    return _collapsed_body(x, view, state.higher_support)


@dataclass
class AnchorContext:
    """In-progress state of one anchored-follower search."""

    x: int
    need: int  # S.c + 1
    nbrs: dict[int, list[int]]
    layer: Sequence[int]
    overlay: SupportOverlay
    dplus: dict[int, int] = field(default_factory=dict)
    heap: list[tuple[int, int]] = field(default_factory=list)
    in_heap: set[int] = field(default_factory=set)
    pushed: set[int] = field(default_factory=set)

    def push(self, v: int) -> None:
        self.pushed.add(v)
        self.in_heap.add(v)
        heapq.heappush(self.heap, (self.layer[v], v))


def shrink(u: int, ctx: AnchorContext) -> None:
    """Propagate the discard of u: survived neighbors lose one support and
    cascade below the threshold themselves."""
    survived = ctx.overlay.survived
    discarded = ctx.overlay.discarded
    dplus = ctx.dplus
    need = ctx.need
    work = [u]
    while work:
        w = work.pop()
        for v in ctx.nbrs[w]:
            if v == ctx.x:
                continue
            if v in survived:
                dplus[v] -= 1
                if dplus[v] < need:
                    survived.discard(v)
                    discarded.add(v)
                    work.append(v)


def _anchored_body(
    x: int, view: ComponentView, layer: Sequence[int], hs: Sequence[int]
) -> AnchorContext:
    overlay = SupportOverlay(hs)
    ctx = AnchorContext(
        x=x,
        need=view.shell_coreness + 1,
        nbrs=view.nbrs,
        layer=layer,
        overlay=overlay,
    )
    nbrs = view.nbrs
    deltas = overlay.deltas
    survived = overlay.survived
    discarded = overlay.discarded
    in_heap = ctx.in_heap
    need = ctx.need

    if x in nbrs:  # x is a member
        survived.add(x)
        ctx.push(x)
    else:
        for u in view.seeds_of(x):
            deltas[u] = deltas.get(u, 0) + 1
            ctx.push(u)

    while ctx.heap:
        lu, u = heapq.heappop(ctx.heap)
        in_heap.discard(u)
        if u != x:
            d = hs[u] + deltas.get(u, 0)
            for v in nbrs[u]:
                if layer[v] <= lu:
                    if v in survived or v in in_heap:
                        d += 1
                elif v not in discarded:
                    d += 1
            if d >= need:
                survived.add(u)
                ctx.dplus[u] = d
        if u in survived:
            pushed = ctx.pushed
            for v in nbrs[u]:
                if layer[v] > lu and v not in pushed:
                    ctx.push(v)
        else:
            discarded.add(u)
            shrink(u, ctx)
    return ctx


def _anchored_result(
    x: int, view: ComponentView, layer: Sequence[int], hs: Sequence[int]
) -> set[int]:
    nbrs = view.nbrs
    need = view.shell_coreness + 1
    if x in nbrs:
        # Only strictly higher layers can be lifted by a member anchor.
        lx = layer[x]
        if all(layer[v] <= lx for v in nbrs[x]):
            return set()
    else:
        # Every entry point dies immediately even with the extra support, and
        # with no survivor anywhere nothing can cascade.
        avail = view.avail
        if all(avail[u] + 1 < need for u in view.seeds_of(x)):
            return set()
    ctx = _anchored_body(x, view, layer, hs)
    result = set(ctx.overlay.survived)
    result.discard(x)
    return result


def find_anchored_followers(
    x: int,
    comp: ShellComponent,
    index: ShellIndex,
    state: CorenessState,
    g: Graph,
    view: ComponentView | None = None,
) -> set[int]:
    """Members of comp whose coreness would rise by one if x were anchored."""
    if x not in index.anchor_candidates[comp.id]:
        raise ValueError(
            f"vertex {x} is not an anchor candidate of component {comp.id}"
        )
    if view is None:
        view = ComponentView(comp, index, g, state)
    return _anchored_result(x, view, state.layer, state.higher_support)


class FollowerStore:
    """Per (candidate, component) follower sets with lazy per-vertex unions.

    Entries are keyed by component id first so maintenance can purge a whole
    retired component in one dictionary pop. Aggregated unions are cached per
    vertex and invalidated whenever one of its entries changes.
    """

    def __init__(self) -> None:
        self.collapsed: dict[int, dict[int, tuple[int, ...]]] = {}
        self.anchored: dict[int, dict[int, tuple[int, ...]]] = {}
        self._col_comps: dict[int, set[int]] = {}
        self._anc_comps: dict[int, set[int]] = {}
        self._agg: dict[int, tuple[frozenset[int], frozenset[int]]] = {}

    def put_component(
        self,
        cid: int,
        col: dict[int, tuple[int, ...]],
        anc: dict[int, tuple[int, ...]],
    ) -> None:
        if cid in self.collapsed or cid in self.anchored:
            raise ValueError(f"component {cid} already has follower entries")
        self.collapsed[cid] = col
        self.anchored[cid] = anc
        for x in col:
            self._col_comps.setdefault(x, set()).add(cid)
            self._agg.pop(x, None)
        for x in anc:
            self._anc_comps.setdefault(x, set()).add(cid)
            self._agg.pop(x, None)

    def drop_component(self, cid: int) -> None:
        for x in self.collapsed.pop(cid, {}):
            comps = self._col_comps.get(x)
            if comps is not None:
                comps.discard(cid)
                if not comps:
                    del self._col_comps[x]
            self._agg.pop(x, None)
        for x in self.anchored.pop(cid, {}):
            comps = self._anc_comps.get(x)
            if comps is not None:
                comps.discard(cid)
                if not comps:
                    del self._anc_comps[x]
            self._agg.pop(x, None)

    def candidates_of(self, cid: int) -> set[int]:
        """All vertices holding an entry (either kind) for component cid."""
        xs = set(self.collapsed.get(cid, ()))
        xs.update(self.anchored.get(cid, ()))
        return xs

    def collapsed_followers(self, x: int) -> frozenset[int]:
        return self._aggregate(x)[0]

    def anchored_followers(self, x: int) -> frozenset[int]:
        return self._aggregate(x)[1]

    def followers_of(
        self, x: int, vertex_count: int
    ) -> tuple[frozenset[int], frozenset[int]]:
        if not 0 <= x < vertex_count:
            raise IndexError(f"vertex id {x} out of range [0, {vertex_count})")
        return self._aggregate(x)

    def _aggregate(self, x: int) -> tuple[frozenset[int], frozenset[int]]:
        cached = self._agg.get(x)
        if cached is not None:
            return cached
        col: set[int] = set()
        for cid in self._col_comps.get(x, ()):
            col.update(self.collapsed[cid][x])
        anc: set[int] = set()
        for cid in self._anc_comps.get(x, ()):
            anc.update(self.anchored[cid][x])
        result = (frozenset(col), frozenset(anc))
        self._agg[x] = result
        return result


def _entries_for_view(
    view: ComponentView,
    col_candidates: Sequence[int],
    anc_candidates: Sequence[int],
    layer: Sequence[int],
    hs: Sequence[int],
) -> tuple[dict[int, tuple[int, ...]], dict[int, tuple[int, ...]]]:
    col: dict[int, tuple[int, ...]] = {}
    for x in col_candidates:
        col[x] = tuple(sorted(_collapsed_body(x, view, hs)))
    anc: dict[int, tuple[int, ...]] = {}
    for x in anc_candidates:
        anc[x] = tuple(sorted(_anchored_result(x, view, layer, hs)))
    return col, anc


def compute_component(
    comp: ShellComponent,
    index: ShellIndex,
    state: CorenessState,
    g: Graph,
) -> tuple[dict[int, tuple[int, ...]], dict[int, tuple[int, ...]]]:
    """Follower entries for every candidate of one component."""
    view = ComponentView(comp, index, g, state)
    return _entries_for_view(
        view,
        sorted(index.collapser_candidates[comp.id]),
        sorted(index.anchor_candidates[comp.id]),
        state.layer,
        state.higher_support,
    )


# Flat snapshot inherited by forked workers; set only around a pool run.
_FORK_SNAPSHOT: dict | None = None
# Per-worker unboxed copy of the snapshot; array indexing allocates a fresh
# int on every read, so each worker converts the arrays to plain lists once.
_CHILD_LISTS: dict | None = None


def _build_snapshot(
    g: Graph, state: CorenessState, index: ShellIndex, cids: list[int]
) -> dict:
    n = g.vertex_count
    indptr = array("l", [0] * (n + 1))
    total = 0
    for u in range(n):
        total += len(g.adjacency[u])
        indptr[u + 1] = total
    indices = array("l", [0] * total)
    pos = 0
    for u in range(n):
        for v in g.adjacency[u]:
            indices[pos] = v
            pos += 1
    comps = {}
    for cid in cids:
        comp = index.live[cid]
        comps[cid] = (comp.shell_coreness, array("l", sorted(comp.members)))
    return {
        "indptr": indptr,
        "indices": indices,
        "owner": array("l", index.owner),
        "coreness": array("l", state.coreness),
        "layer": array("l", state.layer),
        "hs": array("l", state.higher_support),
        "comps": comps,
    }


def _run_snapshot_batch(
    cids: list[int],
) -> list[tuple[int, dict[int, tuple[int, ...]], dict[int, tuple[int, ...]]]]:
    global _CHILD_LISTS
    snap = _FORK_SNAPSHOT
    assert snap is not None
    if _CHILD_LISTS is None:
        _CHILD_LISTS = {
            key: list(snap[key])
            for key in ("indptr", "indices", "owner", "coreness", "layer", "hs")
        }
    lists = _CHILD_LISTS
    indptr = lists["indptr"]
    indices = lists["indices"]
    owner = lists["owner"]
    coreness = lists["coreness"]
    layer = lists["layer"]
    hs = lists["hs"]
    out = []
    for cid in cids:
        kc, member_list = snap["comps"][cid]
        view = ComponentView.from_arrays(
            cid, kc, member_list, indptr, indices, owner, hs
        )
        members = view.members
        higher = [x for x in view.outside if coreness[x] > kc]
        lower = [x for x in view.outside if coreness[x] < kc]
        col_candidates = sorted(members | set(higher))
        anc_candidates = sorted(members | set(lower))
        col, anc = _entries_for_view(view, col_candidates, anc_candidates, layer, hs)
        out.append((cid, col, anc))
    return out


def _make_batches(index: ShellIndex, cids: list[int], workers: int) -> list[list[int]]:
    """Group components into balanced batches, costliest components first."""

    def est(cid: int) -> int:
        comp = index.live[cid]
        cand = len(index.collapser_candidates[cid]) + len(index.anchor_candidates[cid])
        return cand + 2 * len(comp.internal_edges) + 1

    ordered = sorted(cids, key=lambda cid: (-est(cid), cid))
    n_batches = min(len(ordered), workers * 8)
    batches: list[list[int]] = [[] for _ in range(n_batches)]
    loads = [0] * n_batches
    for cid in ordered:
        i = loads.index(min(loads))
        batches[i].append(cid)
        loads[i] += est(cid)
    return [b for b in batches if b]


def compute_all_followers(
    g: Graph,
    state: CorenessState,
    index: ShellIndex,
    store: FollowerStore,
    dirty: set[int] | None = None,
    workers: int = 1,
) -> None:
    """Fill the store for every dirty component (all live ones by default).

    Work is scheduled at component granularity; results are merged by
    component id so the outcome is identical for any worker count.
    """
    cids = sorted(index.live if dirty is None else dirty)
    if not cids:
        return
    if workers <= 1 or len(cids) < 4:
        for cid in cids:
            col, anc = compute_component(index.live[cid], index, state, g)
            store.put_component(cid, col, anc)
        return

    global _FORK_SNAPSHOT, _CHILD_LISTS
    batches = _make_batches(index, cids, workers)
    ctx = multiprocessing.get_context("fork")
    _FORK_SNAPSHOT = _build_snapshot(g, state, index, cids)
    _CHILD_LISTS = None  # workers fork with an empty cache
    try:
        with ctx.Pool(processes=workers) as pool:
            merged: dict[
                int, tuple[dict[int, tuple[int, ...]], dict[int, tuple[int, ...]]]
            ] = {}
            for chunk in pool.imap_unordered(_run_snapshot_batch, batches):
                for cid, col, anc in chunk:
                    merged[cid] = (col, anc)
    finally:
        _FORK_SNAPSHOT = None
    for cid in cids:
        col, anc = merged[cid]
        store.put_component(cid, col, anc)
