"""Undirected simple graph with dense internal ids and external labels."""

from __future__ import annotations

from typing import IO, Iterable, Iterator


class EdgeListParseError(ValueError):
    """Raised when an edge-list line does not hold exactly two labels."""

    def __init__(self, line_number: int, line: str):
        self.line_number = line_number
        self.line = line
        super().__init__(f"line {line_number}: expected two vertex labels, got {line!r}")


class Graph:
    """Mutable undirected simple graph.

    Vertices carry dense internal ids 0..n-1; external labels only matter at
    the I/O boundary. Adjacency is stored as one set per vertex, so parallel
    edges are impossible by construction and self-loops are rejected at the
    mutation surface.
    """

    __slots__ = ("adjacency", "labels", "label_to_id", "edge_count")

    def __init__(self) -> None:
        self.adjacency: list[set[int]] = []
        self.labels: list[str] = []
        self.label_to_id: dict[str, int] = {}
        self.edge_count: int = 0

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def add_vertex(self, label: str | None = None) -> int:
        """Create a new isolated vertex and return its internal id."""
        vid = len(self.adjacency)
        if label is None:
            label = str(vid)
        if label in self.label_to_id:
            raise ValueError(f"duplicate vertex label {label!r}")
        self.adjacency.append(set())
        self.labels.append(label)
        self.label_to_id[label] = vid
        return vid

    def ensure_vertex(self, label: str) -> int:
        """Return the id for label, creating an isolated vertex if unseen."""
        vid = self.label_to_id.get(label)
        if vid is None:
            vid = self.add_vertex(label)
        return vid

    def _check_id(self, v: int) -> None:
        if not 0 <= v < len(self.adjacency):
            raise IndexError(f"vertex id {v} out of range [0, {len(self.adjacency)})")

    def degree(self, v: int) -> int:
        self._check_id(v)
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_id(u)
        self._check_id(v)
        return v in self.adjacency[u]

    def insert_edge(self, u: int, v: int) -> bool:
        """Insert edge (u, v). Returns False for self-loops and existing edges."""
        self._check_id(u)
        self._check_id(v)
        if u == v or v in self.adjacency[u]:
            return False
        self.adjacency[u].add(v)
        self.adjacency[v].add(u)
        self.edge_count += 1
        return True

    def remove_edge(self, u: int, v: int) -> bool:
        """Remove edge (u, v). Returns False if the edge was absent."""
        self._check_id(u)
        self._check_id(v)
        if u == v or v not in self.adjacency[u]:
            return False
        self.adjacency[u].discard(v)
        self.adjacency[v].discard(u)
        self.edge_count -= 1
        return True

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (min_id, max_id)."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def copy(self) -> "Graph":
        g = Graph()
        g.adjacency = [set(s) for s in self.adjacency]
        g.labels = list(self.labels)
        g.label_to_id = dict(self.label_to_id)
        g.edge_count = self.edge_count
        return g

    @classmethod
    def from_label_edges(
        cls, edges: Iterable[tuple[str, str]], isolated: Iterable[str] = ()
    ) -> "Graph":
        """Build a graph from (label, label) pairs; handy in tests."""
        g = cls()
        for a, b in edges:
            u = g.ensure_vertex(a)
            v = g.ensure_vertex(b)
            g.insert_edge(u, v)
        for a in isolated:
            g.ensure_vertex(a)
        return g

    def __repr__(self) -> str:
        return f"<Graph n={self.vertex_count} m={self.edge_count}>"


def load_edge_list(source: IO[str] | str | Iterable[str]) -> Graph:
    """Parse SNAP-style edge-list text into a Graph.

    One edge per line as two whitespace-separated labels; lines starting with
    '#' and blank lines are ignored. Self-loop lines declare the vertex but
    add no edge; duplicate edges collapse. Labels are assigned dense internal
    ids in first-appearance order.
    """
    if isinstance(source, str):
        lines: Iterable[str] = source.splitlines()
    else:
        lines = source
    g = Graph()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(lineno, raw.rstrip("\n"))
        u = g.ensure_vertex(parts[0])
        v = g.ensure_vertex(parts[1])
        if u != v:
            g.insert_edge(u, v)
    return g
