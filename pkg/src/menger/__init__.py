"""Vertex-connectivity toolkit: separators, disjoint paths, theorem checks.

Computes the connectivity of a terminal pair two independent ways (subset
brute force and unit-capacity max flow), enumerates minimum separators,
constructs maximum internally disjoint path systems both by flow
decomposition and by a recursive contraction algorithm, and machine-checks
the underlying statements over exhaustive and randomized graph corpora.
"""

from .connectivity import (
    Connectivity,
    Separator,
    SeparatorEnumeration,
    SplitNetwork,
    enumerate_minimum_separators,
    is_separator,
    kappa_bruteforce,
    kappa_flow,
    min_vertex_cut,
)
from .edgelist import EdgeListDocument, parse_edgelist, serialize_graph
from .errors import (
    AdjacentTerminalsError,
    CapExceededError,
    EdgeListParseError,
    KappaDroppedAfterContractionError,
    LiftFailedError,
    MengerError,
    PreconditionViolatedError,
    SelfLoopError,
    TerminalInSetError,
    TooLargeError,
    UnknownEdgeError,
    UnknownVertexError,
)
from .graph import Graph, Path, TerminalPair, edge_key
from .harness import (
    CheckReport,
    Exhaustive,
    Random,
    SplitMix64,
    SuiteSummary,
    check_contraction_lemma,
    check_lemma1,
    check_menger,
    check_theorem1,
    generate,
    replay_counterexample,
    run_suite,
)
from .paths import (
    PathSystem,
    base_case_paths,
    critical_spanning_subgraph,
    lift_path_system,
    menger_paths,
    mu_bruteforce,
    mu_flow,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacentTerminalsError",
    "CapExceededError",
    "CheckReport",
    "Connectivity",
    "EdgeListDocument",
    "EdgeListParseError",
    "Exhaustive",
    "Graph",
    "KappaDroppedAfterContractionError",
    "LiftFailedError",
    "MengerError",
    "Path",
    "PathSystem",
    "PreconditionViolatedError",
    "Random",
    "SelfLoopError",
    "Separator",
    "SeparatorEnumeration",
    "SplitMix64",
    "SplitNetwork",
    "SuiteSummary",
    "TerminalInSetError",
    "TerminalPair",
    "TooLargeError",
    "UnknownEdgeError",
    "UnknownVertexError",
    "base_case_paths",
    "check_contraction_lemma",
    "check_lemma1",
    "check_menger",
    "check_theorem1",
    "critical_spanning_subgraph",
    "edge_key",
    "enumerate_minimum_separators",
    "generate",
    "is_separator",
    "kappa_bruteforce",
    "kappa_flow",
    "lift_path_system",
    "menger_paths",
    "min_vertex_cut",
    "mu_bruteforce",
    "mu_flow",
    "parse_edgelist",
    "replay_counterexample",
    "run_suite",
    "serialize_graph",
]
