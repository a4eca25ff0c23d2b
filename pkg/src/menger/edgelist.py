"""Plain-text edge-list documents and their mapping to graph values.

Grammar, line by line: blank lines and '#' comments are ignored; one token
declares a vertex; two tokens declare an edge; anything longer is an error.
Tokens are arbitrary whitespace-free strings and are preserved verbatim on
output. Internally each token is assigned a small integer id in order of
first appearance; those ids are the vertex identifiers every algorithm sees
and all tie-breaking follows them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import EdgeListParseError, UnknownVertexError
from .graph import Graph


@dataclass(frozen=True)
class EdgeListDocument:
    """A parsed edge-list file: token table plus raw declarations."""

    tokens: tuple
    edge_pairs: tuple  # (id, id) per edge line, duplicates preserved
    declared: tuple  # ids that appeared on single-token lines

    @cached_property
    def graph(self) -> Graph:
        return Graph.from_edge_list(self.edge_pairs, isolated=range(len(self.tokens)))

    def id_of(self, token: str) -> int:
        try:
            return self._ids[token]
        except KeyError:
            raise UnknownVertexError(f"vertex {token!r} does not appear in the input")

    def token_of(self, vid: int) -> str:
        return self.tokens[vid]

    @cached_property
    def _ids(self) -> dict:
        return {token: i for i, token in enumerate(self.tokens)}


def parse_edgelist(text: str) -> EdgeListDocument:
    """Parse edge-list text; malformed lines raise EdgeListParseError."""
    ids: dict = {}
    tokens: list = []
    edge_pairs: list = []
    declared: list = []

    def intern(token: str) -> int:
        if token not in ids:
            ids[token] = len(tokens)
            tokens.append(token)
        return ids[token]

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            declared.append(intern(parts[0]))
        elif len(parts) == 2:
            a, b = parts
            if a == b:
                raise EdgeListParseError(f"line {number}: self-loop on {a!r}")
            edge_pairs.append((intern(a), intern(b)))
        else:
            raise EdgeListParseError(
                f"line {number}: expected 1 or 2 tokens, got {len(parts)}"
            )
    return EdgeListDocument(tuple(tokens), tuple(edge_pairs), tuple(declared))


def serialize_graph(graph: Graph, names: Mapping) -> str:
    """Canonical edge-list text for a graph: isolated vertices, then edges."""
    lines = []
    for w in graph.sorted_vertices:
        if graph.degree(w) == 0:
            lines.append(names[w])
    for a, b in graph.sorted_edges:
        lines.append(f"{names[a]} {names[b]}")
    return "\n".join(lines) + ("\n" if lines else "")
