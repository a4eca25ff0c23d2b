"""Terminal-pair connectivity: two independent engines plus separator tooling.

kappa_bruteforce enumerates candidate separators directly and is the ground
truth on small graphs; kappa_flow reduces to unit-capacity max flow on a
vertex-split network and is cross-validated against the brute engine by the
test suite. Both are pure functions of immutable graphs and safe to call
concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .errors import (
    AdjacentTerminalsError,
    TerminalInSetError,
    UnknownVertexError,
)
from .graph import Graph, TerminalPair, Vertex, edge_key


def _require_pair(graph: Graph, pair: TerminalPair) -> None:
    for w in (pair.u, pair.v):
        if w not in graph.vertices:
            raise UnknownVertexError(f"terminal {w!r} is not a vertex of the graph")


def _require_non_adjacent(graph: Graph, pair: TerminalPair) -> None:
    if graph.has_edge(pair.u, pair.v):
        raise AdjacentTerminalsError(f"terminals {pair.u!r} and {pair.v!r} are adjacent")


@dataclass(frozen=True)
class Connectivity:
    """Minimum separator order for a terminal pair: a count, or unbounded.

    `count` is None exactly when the terminals are adjacent and no separator
    exists. Use `.value` for arithmetic; it refuses the unbounded case so a
    "k - 1" style computation can never silently touch infinity.
    """

    count: Optional[int]

    def __post_init__(self) -> None:
        if self.count is not None and self.count < 0:
            raise ValueError("connectivity cannot be negative")

    @classmethod
    def finite(cls, k: int) -> "Connectivity":
        return cls(int(k))

    @classmethod
    def unbounded(cls) -> "Connectivity":
        return cls(None)

    @property
    def is_unbounded(self) -> bool:
        return self.count is None

    @property
    def value(self) -> int:
        if self.count is None:
            raise ValueError("unbounded connectivity has no finite value")
        return self.count

    def __str__(self) -> str:
        return "unbounded" if self.count is None else str(self.count)


@dataclass(frozen=True)
class Separator:
    """A vertex set whose removal disconnects the pair's terminals."""

    members: frozenset
    pair: TerminalPair


@dataclass(frozen=True)
class SeparatorEnumeration:
    """All minimum separators of a pair, each with its induced edge set."""

    separators: tuple
    induced_edges: tuple
    truncated: bool

    def entries(self):
        return zip(self.separators, self.induced_edges)

    def __len__(self) -> int:
        return len(self.separators)


def is_separator(graph: Graph, pair: TerminalPair, subset: Iterable) -> bool:
    """True iff removing `subset` puts the terminals in different components.

    Adjacent terminals cannot be separated, so the answer is False for them.
    """
    _require_pair(graph, pair)
    members = frozenset(subset)
    if members & {pair.u, pair.v}:
        raise TerminalInSetError("separator candidate contains a terminal")
    for w in members:
        if w not in graph.vertices:
            raise UnknownVertexError(f"unknown vertex {w!r} in separator candidate")
    if graph.has_edge(pair.u, pair.v):
        return False
    return not graph.has_path(pair.u, pair.v, avoiding=members)


def kappa_bruteforce(graph: Graph, pair: TerminalPair) -> Connectivity:
    """Smallest separator order, by subset enumeration in (size, lex) order."""
    _require_pair(graph, pair)
    if graph.has_edge(pair.u, pair.v):
        return Connectivity.unbounded()
    interior = tuple(w for w in graph.sorted_vertices if w != pair.u and w != pair.v)
    for size in range(len(interior) + 1):
        for subset in combinations(interior, size):
            if not graph.has_path(pair.u, pair.v, avoiding=frozenset(subset)):
                return Connectivity.finite(size)
    raise AssertionError("unreachable: the full interior always separates a non-adjacent pair")


class SplitNetwork:
    """Directed unit-capacity network encoding vertex-disjoint routing.

    Every non-terminal vertex w becomes two nodes joined by a capacity-1 arc,
    so arc capacity limits how often w is used. Undirected edges become a
    pair of high-capacity arcs (one per direction); edges at the source
    terminal leave the source node directly and edges at the sink terminal
    enter the sink node directly. High capacity on non-split arcs keeps every
    minimum cut on split arcs, which is what min_cut_vertices reads off.

    Residual state is kept out of the object (max_flow returns it), so one
    network can serve many what-if runs with edges or vertices excluded.
    """

    __slots__ = (
        "n_nodes",
        "source",
        "sink",
        "arc_to",
        "cap0",
        "heads",
        "node_vertex",
        "split_arc",
        "edge_arcs",
        "big",
    )

    def __init__(self, graph: Graph, pair: TerminalPair):
        _require_pair(graph, pair)
        _require_non_adjacent(graph, pair)
        u, v = pair.u, pair.v
        inner = [w for w in graph.sorted_vertices if w != u and w != v]
        index = {w: i for i, w in enumerate(inner)}
        self.n_nodes = 2 * len(inner) + 2
        self.source = 2 * len(inner)
        self.sink = self.source + 1
        self.big = len(graph.vertices)  # exceeds any achievable flow

        node_vertex = [None] * self.n_nodes
        for w, i in index.items():
            node_vertex[2 * i] = w
            node_vertex[2 * i + 1] = w
        node_vertex[self.source] = u
        node_vertex[self.sink] = v
        self.node_vertex = node_vertex

        self.arc_to: list = []
        self.cap0: list = []
        self.heads: list = [[] for _ in range(self.n_nodes)]

        def add(tail: int, head: int, cap: int) -> int:
            idx = len(self.arc_to)
            self.arc_to.append(head)
            self.cap0.append(cap)
            self.heads[tail].append(idx)
            self.arc_to.append(tail)
            self.cap0.append(0)
            self.heads[head].append(idx + 1)
            return idx

        self.split_arc = {w: add(2 * i, 2 * i + 1, 1) for w, i in index.items()}

        self.edge_arcs = {}
        for a, b in graph.sorted_edges:
            arcs = []
            if a == u:
                arcs.append(add(self.source, 2 * index[b], self.big))
            elif b == u:
                arcs.append(add(self.source, 2 * index[a], self.big))
            elif a == v:
                arcs.append(add(2 * index[b] + 1, self.sink, self.big))
            elif b == v:
                arcs.append(add(2 * index[a] + 1, self.sink, self.big))
            else:
                arcs.append(add(2 * index[a] + 1, 2 * index[b], self.big))
                arcs.append(add(2 * index[b] + 1, 2 * index[a], self.big))
            self.edge_arcs[(a, b)] = tuple(arcs)

    def max_flow(
        self,
        limit: Optional[int] = None,
        exclude_edges: Iterable = (),
        exclude_vertices: Iterable = (),
    ) -> tuple:
        """Run shortest-augmenting-path max flow; returns (value, residual caps).

        `limit` stops early once that much flow is placed. Exclusions zero the
        arcs of the named original edges or the split arcs of the named
        vertices, which is equivalent to deleting them from the source graph.
        """
        cap = self.cap0.copy()
        for e in exclude_edges:
            for a in self.edge_arcs[e]:
                cap[a] = 0
                cap[a ^ 1] = 0
        for w in exclude_vertices:
            a = self.split_arc[w]
            cap[a] = 0
            cap[a ^ 1] = 0
        goal = self.big if limit is None else limit
        arc_to = self.arc_to
        heads = self.heads
        source, sink = self.source, self.sink
        flow = 0
        while flow < goal:
            prev = [-1] * self.n_nodes
            prev[source] = -2
            queue = deque((source,))
            reached = False
            while queue and not reached:
                node = queue.popleft()
                for a in heads[node]:
                    if cap[a] > 0:
                        nxt = arc_to[a]
                        if prev[nxt] == -1:
                            prev[nxt] = a
                            if nxt == sink:
                                reached = True
                                break
                            queue.append(nxt)
            if not reached:
                break
            push = self.big
            node = sink
            while node != source:
                a = prev[node]
                if cap[a] < push:
                    push = cap[a]
                node = arc_to[a ^ 1]
            node = sink
            while node != source:
                a = prev[node]
                cap[a] -= push
                cap[a ^ 1] += push
                node = arc_to[a ^ 1]
            flow += push
        return flow, cap

    def min_cut_vertices(self, cap: list) -> tuple:
        """Vertices whose split arcs cross the residual source-side boundary."""
        reach = [False] * self.n_nodes
        reach[self.source] = True
        stack = [self.source]
        arc_to = self.arc_to
        while stack:
            node = stack.pop()
            for a in self.heads[node]:
                if cap[a] > 0 and not reach[arc_to[a]]:
                    reach[arc_to[a]] = True
                    stack.append(arc_to[a])
        cut = []
        for w, a in self.split_arc.items():
            tail = a ^ 1  # reverse arc points at the tail node
            if reach[arc_to[tail]] and not reach[arc_to[a]]:
                cut.append(w)
        return tuple(sorted(cut))

    def edges_with_flow(self, cap: list) -> set:
        """Original edges carrying positive flow in the given residual state."""
        cap0 = self.cap0
        return {
            e
            for e, arcs in self.edge_arcs.items()
            if any(cap0[a] > cap[a] for a in arcs)
        }

    def flow_paths(self, cap: list) -> list:
        """Decompose the flow into source-sink vertex sequences.

        Unit split arcs make the returned paths internally disjoint. Flow on
        cycles (possible in principle, never produced by augmentation from a
        zero flow) would simply be ignored.
        """
        cap0 = self.cap0
        used = [c0 - c if c0 > c else 0 for c0, c in zip(cap0, cap)]
        arc_to = self.arc_to
        heads = self.heads
        node_vertex = self.node_vertex
        paths = []
        while any(used[a] > 0 for a in heads[self.source]):
            node = self.source
            verts = [node_vertex[node]]
            while node != self.sink:
                for a in heads[node]:
                    if used[a] > 0:
                        used[a] -= 1
                        node = arc_to[a]
                        if node_vertex[node] != verts[-1]:
                            verts.append(node_vertex[node])
                        break
                else:
                    raise AssertionError("flow conservation violated during decomposition")
                if len(verts) > self.n_nodes:
                    raise AssertionError("flow decomposition walked a cycle")
            paths.append(tuple(verts))
        return paths


def kappa_flow(graph: Graph, pair: TerminalPair) -> Connectivity:
    """Minimum separator order via max flow on the split network."""
    _require_pair(graph, pair)
    if graph.has_edge(pair.u, pair.v):
        return Connectivity.unbounded()
    value, _ = SplitNetwork(graph, pair).max_flow()
    return Connectivity.finite(value)


def min_vertex_cut(graph: Graph, pair: TerminalPair) -> Separator:
    """One minimum separator, extracted from the split-network min cut."""
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    net = SplitNetwork(graph, pair)
    _, cap = net.max_flow()
    return Separator(frozenset(net.min_cut_vertices(cap)), pair)


DEFAULT_SEPARATOR_LIMIT = 10_000


def enumerate_minimum_separators(
    graph: Graph,
    pair: TerminalPair,
    limit: int = DEFAULT_SEPARATOR_LIMIT,
) -> SeparatorEnumeration:
    """Every minimum separator in lexicographic order, with its induced edges.

    Intended for small graphs; separator counts grow exponentially, hence
    the hard limit with a truncation flag.
    """
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    k = kappa_flow(graph, pair).value
    interior = tuple(w for w in graph.sorted_vertices if w != pair.u and w != pair.v)
    found = []
    induced = []
    truncated = False
    for subset in combinations(interior, k):
        members = frozenset(subset)
        if graph.has_path(pair.u, pair.v, avoiding=members):
            continue
        if len(found) >= limit:
            truncated = True
            break
        found.append(Separator(members, pair))
        induced.append(graph.induced_edges(members))
    return SeparatorEnumeration(tuple(found), tuple(induced), truncated)
