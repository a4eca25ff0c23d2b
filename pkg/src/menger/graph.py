"""Immutable simple-graph values and the structural operations built on them.

Vertices are opaque ids; any hashable, mutually comparable tokens work (the
command-line layer canonicalizes to small non-negative integers). All
tie-breaking in the package uses the vertex order, so graphs behave
deterministically. Graph values never mutate: every editing operation
returns a new graph, which makes them safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Iterator

from .errors import SelfLoopError, UnknownEdgeError, UnknownVertexError

Vertex = Any
Edge = tuple  # normalized 2-tuple, smaller endpoint first


def edge_key(a: Vertex, b: Vertex) -> Edge:
    """Normalize an unordered vertex pair to a canonical edge tuple."""
    if a == b:
        raise SelfLoopError(f"self-loop at vertex {a!r}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph with value semantics.

    Construction normalizes and validates: edges are stored as ordered
    2-tuples, self-loops are rejected and both endpoints of every edge
    must be in the vertex set.
    """

    vertices: frozenset
    edges: frozenset

    def __post_init__(self) -> None:
        vertices = frozenset(self.vertices)
        edges = set()
        for e in self.edges:
            a, b = e
            key = edge_key(a, b)
            if a not in vertices or b not in vertices:
                raise UnknownVertexError(f"edge {key!r} has an endpoint outside the vertex set")
            edges.add(key)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edge_list(cls, pairs: Iterable, isolated: Iterable = ()) -> "Graph":
        """Build a graph from vertex-id pairs plus explicit isolated vertices.

        Duplicate pairs and both orientations collapse to one edge; a pair
        with equal endpoints raises SelfLoopError.
        """
        vertices = set(isolated)
        edges = set()
        for a, b in pairs:
            edges.add(edge_key(a, b))
            vertices.add(a)
            vertices.add(b)
        return cls(frozenset(vertices), frozenset(edges))

    # -- derived views -------------------------------------------------

    @cached_property
    def sorted_vertices(self) -> tuple:
        return tuple(sorted(self.vertices))

    @cached_property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def _adjacency(self) -> dict:
        adj: dict = {w: [] for w in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {w: tuple(sorted(ns)) for w, ns in adj.items()}

    # -- queries -------------------------------------------------------

    def _require_vertex(self, w: Vertex) -> None:
        if w not in self.vertices:
            raise UnknownVertexError(f"unknown vertex {w!r}")

    def _require_edge(self, e) -> Edge:
        a, b = e
        key = edge_key(a, b)
        if key not in self.edges:
            raise UnknownEdgeError(f"unknown edge {key!r}")
        return key

    def has_edge(self, a: Vertex, b: Vertex) -> bool:
        if a == b:
            return False
        return ((a, b) if a < b else (b, a)) in self.edges

    def neighbors(self, w: Vertex) -> frozenset:
        """Open neighborhood of w."""
        self._require_vertex(w)
        return frozenset(self._adjacency[w])

    def degree(self, w: Vertex) -> int:
        self._require_vertex(w)
        return len(self._adjacency[w])

    def has_path(self, s: Vertex, t: Vertex, avoiding: Iterable = ()) -> bool:
        """True iff t is reachable from s without touching `avoiding`."""
        self._require_vertex(s)
        self._require_vertex(t)
        blocked = avoiding if isinstance(avoiding, (set, frozenset)) else frozenset(avoiding)
        if s in blocked or t in blocked:
            return False
        if s == t:
            return True
        adj = self._adjacency
        seen = {s}
        stack = [s]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt == t:
                    return True
                if nxt not in seen and nxt not in blocked:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    def connected_components(self) -> tuple:
        """Partition of the vertex set into maximal connected blocks.

        Blocks are ordered by their smallest vertex.
        """
        adj = self._adjacency
        seen: set = set()
        blocks = []
        for root in self.sorted_vertices:
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                for nxt in adj[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        comp.append(nxt)
                        stack.append(nxt)
            blocks.append(frozenset(comp))
        return tuple(blocks)

    def is_bridge(self, e) -> bool:
        """True iff deleting e increases the number of connected components."""
        key = self._require_edge(e)
        a, b = key
        return not self.delete_edge(key).has_path(a, b)

    def induced_edges(self, subset: Iterable) -> frozenset:
        """Edges of the graph with both endpoints inside `subset`."""
        members = frozenset(subset)
        for w in members:
            self._require_vertex(w)
        return frozenset(e for e in self.edges if e[0] in members and e[1] in members)

    # -- editing (value semantics) --------------------------------------

    def delete_vertex(self, w: Vertex) -> "Graph":
        """Graph with w and all incident edges removed."""
        self._require_vertex(w)
        return Graph(
            self.vertices - {w},
            frozenset(e for e in self.edges if w not in e),
        )

    def delete_vertices(self, ws: Iterable) -> "Graph":
        """Graph with every vertex in `ws` (and incident edges) removed."""
        gone = frozenset(ws)
        for w in gone:
            self._require_vertex(w)
        return Graph(
            self.vertices - gone,
            frozenset(e for e in self.edges if e[0] not in gone and e[1] not in gone),
        )

    def delete_edge(self, e) -> "Graph":
        """Graph with edge e removed; the vertex set is unchanged."""
        key = self._require_edge(e)
        return Graph(self.vertices, self.edges - {key})

    def contract_reduce(self, x: Vertex, y: Vertex) -> tuple:
        """Delete y and reconnect its other neighbors to x, keeping the graph simple.

        Returns (reduced graph, added edges). `added` is exactly the set of
        new x-incident edges that were absent before; path lifting depends
        on knowing which edges of the result already existed.
        """
        self._require_edge((x, y))
        x_adjacent = set(self._adjacency[x])
        new_edges = {edge_key(x, w) for w in self._adjacency[y] if w != x}
        added = frozenset(e for e in new_edges if (e[1] if e[0] == x else e[0]) not in x_adjacent)
        kept = {e for e in self.edges if y not in e}
        reduced = Graph(self.vertices - {y}, frozenset(kept | new_edges))
        return reduced, added

    # -- misc ------------------------------------------------------------

    def __iter__(self) -> Iterator:
        return iter(self.sorted_vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class TerminalPair:
    """An ordered pair of distinct terminal vertices."""

    u: Vertex
    v: Vertex

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError("terminals must be distinct")

    def __iter__(self) -> Iterator:
        return iter((self.u, self.v))


@dataclass(frozen=True)
class Path:
    """A simple path given as its vertex sequence."""

    vertices: tuple

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise ValueError("a path needs at least two vertices")
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in path {vs!r}")

    @property
    def interior(self) -> tuple:
        return self.vertices[1:-1]

    def edges(self) -> tuple:
        """The path's edge sequence, each edge normalized."""
        vs = self.vertices
        return tuple(edge_key(vs[i], vs[i + 1]) for i in range(len(vs) - 1))

    def __len__(self) -> int:
        return len(self.vertices)
