"""Maximum internally disjoint path systems, built two independent ways.

mu_flow decomposes a max flow on the split network. menger_paths builds the
same cardinality constructively: reduce to an edge-critical spanning
subgraph, contract an interior edge, recurse, then lift the smaller system
back through the contraction. mu_bruteforce is the small-graph oracle the
other two are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .connectivity import (
    SplitNetwork,
    _require_non_adjacent,
    _require_pair,
    kappa_flow,
)
from .errors import (
    AdjacentTerminalsError,
    KappaDroppedAfterContractionError,
    LiftFailedError,
    PreconditionViolatedError,
    TooLargeError,
)
from .graph import Graph, Path, TerminalPair, Vertex, edge_key

MAX_BRUTE_VERTICES = 12


@dataclass(frozen=True)
class PathSystem:
    """A list of terminal-to-terminal paths meant to be internally disjoint."""

    pair: TerminalPair
    paths: tuple

    def __len__(self) -> int:
        return len(self.paths)

    def violations(self, graph: Graph) -> list:
        """Re-walk every path in `graph` and report every broken invariant.

        Empty list means the system is valid: each path runs terminal to
        terminal along existing edges, and no two paths share an interior
        vertex. This validator is deliberately independent of how systems
        are produced.
        """
        problems = []
        u, v = self.pair.u, self.pair.v
        claimed: dict = {}
        for i, path in enumerate(self.paths):
            vs = path.vertices
            if vs[0] != u or vs[-1] != v:
                problems.append(f"path {i} does not run {u!r} -> {v!r}: {vs!r}")
            if len(set(vs)) != len(vs):
                problems.append(f"path {i} repeats a vertex: {vs!r}")
            for a, b in zip(vs, vs[1:]):
                if not (a in graph.vertices and b in graph.vertices and graph.has_edge(a, b)):
                    problems.append(f"path {i} uses missing edge {a!r}-{b!r}")
            for w in vs[1:-1]:
                if w in (u, v):
                    problems.append(f"path {i} passes through terminal {w!r}")
                elif w in claimed:
                    problems.append(
                        f"paths {claimed[w]} and {i} share interior vertex {w!r}"
                    )
                else:
                    claimed[w] = i
        return problems

    def is_valid_in(self, graph: Graph) -> bool:
        return not self.violations(graph)


def mu_flow(graph: Graph, pair: TerminalPair) -> PathSystem:
    """Max-cardinality internally disjoint paths via flow decomposition."""
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    net = SplitNetwork(graph, pair)
    _, cap = net.max_flow()
    paths = tuple(Path(vs) for vs in net.flow_paths(cap))
    return PathSystem(pair, paths)


def mu_bruteforce(graph: Graph, pair: TerminalPair) -> int:
    """Exact maximum number of internally disjoint terminal paths.

    Enumerates every simple path between the terminals, dedupes them by
    interior-vertex set, then backtracks for the largest pairwise disjoint
    subfamily. Exponential; refuses graphs above MAX_BRUTE_VERTICES.
    """
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    if len(graph.vertices) > MAX_BRUTE_VERTICES:
        raise TooLargeError(
            f"brute-force path packing is capped at {MAX_BRUTE_VERTICES} vertices"
        )
    u, v = pair.u, pair.v
    interior = [w for w in graph.sorted_vertices if w != u and w != v]
    bit = {w: 1 << i for i, w in enumerate(interior)}
    adj = {w: graph._adjacency[w] for w in graph.vertices}

    masks: set = set()

    def explore(node: Vertex, mask: int, visited: set) -> None:
        for nxt in adj[node]:
            if nxt == v:
                masks.add(mask)
            elif nxt != u and nxt not in visited:
                visited.add(nxt)
                explore(nxt, mask | bit[nxt], visited)
                visited.discard(nxt)

    explore(u, 0, set())
    if not masks:
        return 0

    # Smallest interiors first: greedy prefixes reach good bounds sooner.
    order = sorted(masks, key=lambda m: (bin(m).count("1"), m))
    ceiling = min(graph.degree(u), graph.degree(v))
    best = 0

    def pack(start: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if best >= ceiling or count + (len(order) - start) <= best:
            return
        for j in range(start, len(order)):
            m = order[j]
            if not m & used:
                pack(j + 1, used | m, count + 1)
                if best >= ceiling:
                    return

    pack(0, 0, 0)
    return best


def critical_spanning_subgraph(
    graph: Graph, pair: TerminalPair, kappa: Optional[int] = None
) -> Graph:
    """Spanning subgraph in which every remaining edge is connectivity-critical.

    One pass over the edges in canonical order, deleting each edge whose
    removal keeps the pair's connectivity at its original value k. A single
    pass suffices: connectivity never increases under deletion, so an edge
    that once became critical stays critical.

    `kappa` may pass a precomputed connectivity value to skip one flow run.

    The pass itself is incremental: edges not carried by the maintained max
    flow are deleted outright (the flow already certifies k without them);
    carried edges get a capped flow re-run with the edge excluded. The
    result is identical to recomputing connectivity from scratch per edge.
    """
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    if kappa is None:
        kappa = kappa_flow(graph, pair).value
    if not graph.edges:
        return graph
    if kappa == 0:
        return Graph(graph.vertices, frozenset())
    net = SplitNetwork(graph, pair)
    flow, cap = net.max_flow(limit=kappa)
    if flow != kappa:
        raise AssertionError("flow engine disagrees with the supplied connectivity")
    carrying = net.edges_with_flow(cap)
    removed: set = set()
    for e in graph.sorted_edges:
        if e not in carrying:
            removed.add(e)
            continue
        value, trial_cap = net.max_flow(limit=kappa, exclude_edges=(*removed, e))
        if value == kappa:
            removed.add(e)
            carrying = net.edges_with_flow(trial_cap)
    return Graph(graph.vertices, graph.edges - removed)


def base_case_paths(
    graph: Graph, pair: TerminalPair, kappa: Optional[int] = None
) -> PathSystem:
    """Length-2 path system through common neighbors of the terminals.

    Applies when the interior is an independent set in an edge-critical
    graph: every terminal path then has exactly one interior vertex, and
    enough common neighbors must exist to realize the connectivity.
    """
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    u, v = pair.u, pair.v
    interior = frozenset(graph.vertices) - {u, v}
    if graph.induced_edges(interior):
        raise PreconditionViolatedError("interior vertices are not an independent set")
    if kappa is None:
        kappa = kappa_flow(graph, pair).value
    common = sorted(graph.neighbors(u) & graph.neighbors(v))
    if len(common) < kappa:
        raise PreconditionViolatedError(
            f"{len(common)} common neighbors cannot realize connectivity {kappa}"
        )
    return PathSystem(pair, tuple(Path((u, w, v)) for w in common[:kappa]))


def lift_path_system(
    system: PathSystem,
    x: Vertex,
    y: Vertex,
    y_neighbors: Iterable,
    added: Iterable,
    graph: Graph,
) -> PathSystem:
    """Rewrite a path system of the contracted graph into the original graph.

    `system` lives in contract_reduce(graph, x, y); `added` is that call's
    added-edge set and `y_neighbors` is y's neighborhood in `graph`. If no
    path uses an added edge the system is already valid and returned as is.
    Otherwise the unique path through x is rewired: with w and x_i the path
    neighbors of x, oriented so x_i is reached through an added edge, the
    detour runs w-y-x_i in place of x when w also neighbors y, and
    w-x-y-x_i otherwise. Only y ever enters as a new interior vertex.
    """
    added = frozenset(edge_key(a, b) for a, b in added)
    n_y = frozenset(y_neighbors)
    carriers = [
        i for i, p in enumerate(system.paths) if any(e in added for e in p.edges())
    ]
    if not carriers:
        return system
    through_x = [i for i, p in enumerate(system.paths) if x in p.vertices]
    if len(through_x) > 1:
        raise PreconditionViolatedError(
            f"{len(through_x)} paths pass through {x!r}; an internally disjoint system allows one"
        )
    if len(carriers) > 1 or carriers != through_x:
        raise PreconditionViolatedError("added edges appear outside the single path through x")

    j = carriers[0]
    verts = list(system.paths[j].vertices)
    ix = verts.index(x)
    if ix == 0 or ix == len(verts) - 1:
        raise PreconditionViolatedError(f"contraction endpoint {x!r} is a path terminal")
    before, after = verts[ix - 1], verts[ix + 1]
    if edge_key(x, after) in added:
        w, x_i, insert_at = before, after, ix + 1
    elif edge_key(before, x) in added:
        w, x_i, insert_at = after, before, ix
    else:
        raise PreconditionViolatedError("carrier path has no added edge at x")

    if w in n_y and w != x:
        new_verts = verts[:ix] + [y] + verts[ix + 1 :]
        required = ((w, y), (y, x_i))
    else:
        new_verts = verts[:insert_at] + [y] + verts[insert_at:]
        required = ((x, y), (y, x_i))
    for a, b in required:
        if not graph.has_edge(a, b):
            raise PreconditionViolatedError(f"lift needs edge {a!r}-{b!r}, absent from the graph")

    paths = list(system.paths)
    paths[j] = Path(tuple(new_verts))
    return PathSystem(system.pair, tuple(paths))


def menger_paths(graph: Graph, pair: TerminalPair) -> PathSystem:
    """Construct a path system whose cardinality equals the pair connectivity.

    Each round reduces the current graph to its edge-critical spanning
    subgraph, drops interior vertices left isolated, and either finishes on
    an independent interior (length-2 paths through common neighbors) or
    contracts the least interior edge and recurses on the smaller graph.
    Contraction preserves connectivity for edge-critical graphs, so the
    recovered system keeps full cardinality; each round removes one vertex,
    which bounds the rounds by the vertex count.
    """
    _require_pair(graph, pair)
    if graph.has_edge(pair.u, pair.v):
        raise AdjacentTerminalsError(
            f"terminals {pair.u!r} and {pair.v!r} are adjacent; no separator exists"
        )
    k = kappa_flow(graph, pair).value
    if k == 0:
        return PathSystem(pair, ())
    u, v = pair.u, pair.v

    # Contraction frames, unwound innermost-first once the base case is hit.
    frames = []
    current = graph
    while True:
        h = critical_spanning_subgraph(current, pair, kappa=k)
        isolated = [w for w in h.sorted_vertices if w != u and w != v and h.degree(w) == 0]
        if isolated:
            h = h.delete_vertices(isolated)
        interior = frozenset(h.vertices) - {u, v}
        stubs = [w for w in sorted(interior) if h.degree(w) == 1]
        if stubs:
            raise PreconditionViolatedError(
                f"edge-critical subgraph has degree-1 interior vertices {stubs!r}"
            )
        interior_edges = sorted(h.induced_edges(interior))
        if not interior_edges:
            system = base_case_paths(h, pair, kappa=k)
            break
        x, y = interior_edges[0]
        reduced, added = h.contract_reduce(x, y)
        if kappa_flow(reduced, pair).value != k:
            raise KappaDroppedAfterContractionError(
                f"contracting {x!r}-{y!r} changed connectivity from {k}"
            )
        frames.append((x, y, h.neighbors(y), added, h))
        current = reduced

    for x, y, n_y, added, host in reversed(frames):
        system = lift_path_system(system, x, y, n_y, added, host)
        problems = system.violations(host)
        if problems:
            raise LiftFailedError("; ".join(problems))
    return system
