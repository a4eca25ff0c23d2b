"""Machine verification of the toolkit's connectivity statements.

Each check takes one graph and one non-adjacent terminal pair and returns a
CheckReport with verdict pass, fail, or not-applicable. run_suite sweeps the
checks over exhaustive or seeded-random graph corpora, optionally across a
worker pool, and serializes failing instances as replayable edge-list files.

Oracle hierarchy: the brute-force engines are ground truth up to 8 vertices;
the flow engines, certified against them there, are ground truth above.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, Optional, Union

from .connectivity import (
    Connectivity,
    enumerate_minimum_separators,
    kappa_bruteforce,
    kappa_flow,
    _require_non_adjacent,
    _require_pair,
)
from .edgelist import parse_edgelist, serialize_graph
from .errors import CapExceededError, PreconditionViolatedError
from .graph import Graph, TerminalPair, Vertex
from .paths import menger_paths, mu_bruteforce, mu_flow

EXHAUSTIVE_CAP = 7
BRUTE_GROUND_TRUTH_LIMIT = 8

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 generator, fixed constants, stable on every platform.

    State advances by 0x9E3779B97F4A7C15 per draw; the output mix multiplies
    by 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with xor-shifts 30/27/31.
    These constants are part of the corpus contract and must never change.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform float in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def next_below(self, n: int) -> int:
        return self.next_u64() % n


@dataclass(frozen=True)
class Exhaustive:
    """All labeled graphs on n canonical vertices, once each, mask order."""

    n: int


@dataclass(frozen=True)
class Random:
    """`count` seeded G(n, p) graphs; the sequence is a pure function of the fields."""

    n: int
    p: float
    count: int
    seed: int


GraphSource = Union[Exhaustive, Random]


def _vertex_pairs(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def source_size(source: GraphSource) -> int:
    if isinstance(source, Exhaustive):
        if source.n < 0 or source.n > EXHAUSTIVE_CAP:
            raise CapExceededError(
                f"exhaustive enumeration is capped at {EXHAUSTIVE_CAP} vertices"
            )
        return 1 << len(_vertex_pairs(source.n))
    if source.count < 0 or source.n < 0 or not 0.0 <= source.p <= 1.0:
        raise CapExceededError(f"invalid random source {source!r}")
    return source.count


def describe_source(source: GraphSource) -> str:
    if isinstance(source, Exhaustive):
        return f"exhaustive n={source.n}"
    return f"random n={source.n} p={source.p} count={source.count} seed={source.seed}"


def generate_slice(source: GraphSource, lo: int, hi: int) -> Iterator:
    """Yield (index, graph) for indices in [lo, hi) of the source's sequence."""
    total = source_size(source)
    hi = min(hi, total)
    if isinstance(source, Exhaustive):
        pairs = _vertex_pairs(source.n)
        vertices = range(source.n)
        for mask in range(lo, hi):
            edges = [pairs[t] for t in range(len(pairs)) if (mask >> t) & 1]
            yield mask, Graph.from_edge_list(edges, isolated=vertices)
    else:
        pairs = _vertex_pairs(source.n)
        vertices = range(source.n)
        rng = SplitMix64(source.seed)
        for index in range(hi):
            edges = [pq for pq in pairs if rng.next_unit() < source.p]
            if index >= lo:
                yield index, Graph.from_edge_list(edges, isolated=vertices)


def generate(source: GraphSource) -> Iterator:
    """Deterministic stream of graphs described by the source."""
    for _, graph in generate_slice(source, 0, source_size(source)):
        yield graph


def non_adjacent_pairs(graph: Graph) -> list:
    vs = graph.sorted_vertices
    return [
        TerminalPair(a, b)
        for i, a in enumerate(vs)
        for b in vs[i + 1 :]
        if not graph.has_edge(a, b)
    ]


def sample_pairs(graph: Graph, limit: Optional[int], rng: SplitMix64) -> list:
    """At most `limit` non-adjacent pairs, drawn without replacement."""
    pairs = non_adjacent_pairs(graph)
    if limit is None or len(pairs) <= limit:
        return pairs
    for i in range(limit):
        j = i + rng.next_below(len(pairs) - i)
        pairs[i], pairs[j] = pairs[j], pairs[i]
    return sorted(pairs[:limit], key=lambda p: (p.u, p.v))


# -- engines -----------------------------------------------------------------


def default_kappa(graph: Graph, pair: TerminalPair) -> Connectivity:
    """Connectivity by the oracle hierarchy: brute force small, flow large."""
    if len(graph.vertices) <= BRUTE_GROUND_TRUTH_LIMIT:
        return kappa_bruteforce(graph, pair)
    return kappa_flow(graph, pair)


def broken_kappa(graph: Graph, pair: TerminalPair) -> Connectivity:
    """Deliberately wrong shadow engine (off by one) for harness soundness tests."""
    result = kappa_flow(graph, pair)
    if result.is_unbounded:
        return result
    return Connectivity.finite(result.value + 1)


ENGINES: dict = {
    "default": default_kappa,
    "brute": kappa_bruteforce,
    "flow": kappa_flow,
    "broken": broken_kappa,
}


def _resolve_engine(engine) -> Callable:
    if engine is None:
        return default_kappa
    if callable(engine):
        return engine
    try:
        return ENGINES[engine]
    except KeyError:
        raise ValueError(f"unknown engine {engine!r}; expected one of {sorted(ENGINES)}")


# -- reports -----------------------------------------------------------------

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass
class CheckReport:
    """Outcome of one check on one (graph, pair) instance.

    A fail report carries everything needed to re-run it: the graph itself
    (serializable to the edge-list format), the pair, the offending element
    and the observed/expected values.
    """

    check: str
    graph: Graph
    pair: TerminalPair
    verdict: str
    element: str = ""
    observed: str = ""
    expected: str = ""
    context: str = ""
    elapsed: float = 0.0

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL


def _report(check, graph, pair, verdict, started, **extra) -> CheckReport:
    return CheckReport(
        check=check,
        graph=graph,
        pair=pair,
        verdict=verdict,
        elapsed=time.perf_counter() - started,
        **extra,
    )


# -- the checks ---------------------------------------------------------------


def check_lemma1(graph, pair, engine=None, brute_limit=BRUTE_GROUND_TRUTH_LIMIT):
    """Deleting one vertex or edge moves connectivity by at most one, downward."""
    started = time.perf_counter()
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    kappa = _resolve_engine(engine)
    k = kappa(graph, pair).value
    for w in graph.sorted_vertices:
        if w == pair.u or w == pair.v:
            continue
        val = kappa(graph.delete_vertex(w), pair).value
        if not k - 1 <= val <= k:
            return _report(
                "lemma1", graph, pair, FAIL, started,
                element=f"vertex {w}",
                observed=str(val),
                expected=f"between {k - 1} and {k}",
            )
    for e in graph.sorted_edges:
        val = kappa(graph.delete_edge(e), pair).value
        if not k - 1 <= val <= k:
            return _report(
                "lemma1", graph, pair, FAIL, started,
                element=f"edge {e}",
                observed=str(val),
                expected=f"between {k - 1} and {k}",
            )
    return _report("lemma1", graph, pair, PASS, started)


def check_theorem1(graph, pair, engine=None, brute_limit=BRUTE_GROUND_TRUTH_LIMIT):
    """Deleting an edge inside any minimum separator preserves connectivity."""
    started = time.perf_counter()
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    kappa = _resolve_engine(engine)
    k = kappa(graph, pair).value
    inspected = 0
    for separator, edges in enumerate_minimum_separators(graph, pair).entries():
        for e in sorted(edges):
            inspected += 1
            val = kappa(graph.delete_edge(e), pair).value
            if val != k:
                return _report(
                    "theorem1", graph, pair, FAIL, started,
                    element=f"separator {sorted(separator.members)}, edge {e}",
                    observed=str(val),
                    expected=str(k),
                )
    note = "" if inspected else "vacuous: every minimum separator is independent"
    return _report("theorem1", graph, pair, PASS, started, element=note)


def _deletion_hypothesis_holds(graph, pair, k, kappa) -> bool:
    # Hypothesis of the contraction statement: every single deletion drops
    # connectivity by exactly one.
    if k == 0:
        return False
    for w in graph.sorted_vertices:
        if w == pair.u or w == pair.v:
            continue
        if kappa(graph.delete_vertex(w), pair).value != k - 1:
            return False
    for e in graph.sorted_edges:
        if kappa(graph.delete_edge(e), pair).value != k - 1:
            return False
    return True


def check_contraction_lemma(
    graph, pair, x: Vertex, y: Vertex,
    engine=None, brute_limit=BRUTE_GROUND_TRUTH_LIMIT,
):
    """Contracting an interior edge preserves connectivity, under the hypothesis
    that every single deletion drops it by one.

    Instances whose hypothesis fails are reported not-applicable, never as
    failures, so sweep statistics show how often the gate fired.
    """
    started = time.perf_counter()
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    if x in (pair.u, pair.v) or y in (pair.u, pair.v):
        raise PreconditionViolatedError("contraction endpoints must be interior vertices")
    graph._require_edge((x, y))
    kappa = _resolve_engine(engine)
    k = kappa(graph, pair).value
    if not _deletion_hypothesis_holds(graph, pair, k, kappa):
        return _report(
            "contraction", graph, pair, NOT_APPLICABLE, started,
            element=f"contract({x},{y})",
            observed="hypothesis does not hold",
        )
    reduced, _ = graph.contract_reduce(x, y)
    val = kappa(reduced, pair).value
    if val != k:
        return _report(
            "contraction", graph, pair, FAIL, started,
            element=f"contract({x},{y})",
            observed=str(val),
            expected=str(k),
        )
    return _report("contraction", graph, pair, PASS, started, element=f"contract({x},{y})")


def check_contraction_sweep(
    graph, pair, engine=None, brute_limit=BRUTE_GROUND_TRUTH_LIMIT
):
    """check_contraction_lemma over every interior edge, both orientations,
    evaluating the (expensive) hypothesis once per instance."""
    started = time.perf_counter()
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    interior = frozenset(graph.vertices) - {pair.u, pair.v}
    interior_edges = sorted(graph.induced_edges(interior))
    if not interior_edges:
        return _report(
            "contraction", graph, pair, NOT_APPLICABLE, started,
            observed="no interior edge",
        )
    kappa = _resolve_engine(engine)
    k = kappa(graph, pair).value
    if not _deletion_hypothesis_holds(graph, pair, k, kappa):
        return _report(
            "contraction", graph, pair, NOT_APPLICABLE, started,
            observed="hypothesis does not hold",
        )
    for a, b in interior_edges:
        for x, y in ((a, b), (b, a)):
            reduced, _ = graph.contract_reduce(x, y)
            val = kappa(reduced, pair).value
            if val != k:
                return _report(
                    "contraction", graph, pair, FAIL, started,
                    element=f"contract({x},{y})",
                    observed=str(val),
                    expected=str(k),
                )
    return _report("contraction", graph, pair, PASS, started)


def check_menger(graph, pair, engine=None, brute_limit=BRUTE_GROUND_TRUTH_LIMIT):
    """Connectivity equals the realized disjoint-path count, on every engine.

    Compares the engine's connectivity against both constructive path systems
    (flow decomposition and the recursive builder) and validates the systems;
    on graphs up to `brute_limit` vertices the brute-force engines join the
    comparison.
    """
    started = time.perf_counter()
    _require_pair(graph, pair)
    _require_non_adjacent(graph, pair)
    kappa = _resolve_engine(engine)
    k = kappa(graph, pair).value
    recursive = menger_paths(graph, pair)
    flowing = mu_flow(graph, pair)
    problems = recursive.violations(graph) + flowing.violations(graph)
    if problems:
        return _report(
            "menger", graph, pair, FAIL, started,
            element="path system invariants",
            observed="; ".join(problems),
            expected="valid internally disjoint systems",
        )
    if len(recursive) != k or len(flowing) != k:
        return _report(
            "menger", graph, pair, FAIL, started,
            element="path counts",
            observed=f"recursive={len(recursive)} flow={len(flowing)}",
            expected=f"kappa={k}",
        )
    if len(graph.vertices) <= brute_limit:
        kb = kappa_bruteforce(graph, pair).value
        mb = mu_bruteforce(graph, pair)
        if kb != k or mb != k:
            return _report(
                "menger", graph, pair, FAIL, started,
                element="brute-force comparison",
                observed=f"kappa_brute={kb} mu_brute={mb}",
                expected=f"kappa={k}",
            )
    return _report("menger", graph, pair, PASS, started)


CHECKS: dict = {
    "lemma1": check_lemma1,
    "theorem1": check_theorem1,
    "contraction": check_contraction_sweep,
    "menger": check_menger,
}

ALL_CHECKS = tuple(CHECKS)


# -- suite running -------------------------------------------------------------


@dataclass
class SuiteSummary:
    """Aggregated verdict counts plus the failing reports themselves."""

    sources: tuple
    checks: tuple
    engine: str
    graphs: int = 0
    pairs: int = 0
    totals: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    counterexample_files: tuple = ()

    @property
    def failed(self) -> bool:
        return bool(self.failures)

    def verdict_count(self, check: str, verdict: str) -> int:
        return self.totals.get(check, {}).get(verdict, 0)


def _pair_sampler_seed(base: int, index: int) -> int:
    return (base + _GOLDEN * (index + 1)) & _MASK64


def _run_range(source, lo, hi, checks, engine, pairs_per_graph, brute_limit):
    base_seed = source.seed if isinstance(source, Random) else source.n
    totals = {name: {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0} for name in checks}
    failures = []
    graphs = 0
    pairs_seen = 0
    for index, graph in generate_slice(source, lo, hi):
        graphs += 1
        if pairs_per_graph is None:
            pairs = non_adjacent_pairs(graph)
        else:
            rng = SplitMix64(_pair_sampler_seed(base_seed, index))
            pairs = sample_pairs(graph, pairs_per_graph, rng)
        pairs_seen += len(pairs)
        for pair in pairs:
            for name in checks:
                report = CHECKS[name](graph, pair, engine=engine, brute_limit=brute_limit)
                totals[name][report.verdict] += 1
                if report.failed:
                    report.context = f"{describe_source(source)} index={index}"
                    failures.append(report)
    return graphs, pairs_seen, totals, failures


def _run_range_task(args):
    return _run_range(*args)


def run_suite(
    sources: Iterable,
    checks: Iterable = ALL_CHECKS,
    *,
    jobs: int = 1,
    engine: str = "default",
    pairs_per_graph: Optional[int] = None,
    brute_limit: int = BRUTE_GROUND_TRUTH_LIMIT,
    out_dir: Optional[str] = None,
    max_counterexamples: int = 50,
) -> SuiteSummary:
    """Run the selected checks over every graph and pair of every source.

    Instances are independent, so with jobs > 1 the graph streams are split
    into contiguous ranges processed by a worker pool; results merge in
    range order, making the summary identical to a single-threaded run.
    Failures are data, not errors; callers decide what a failure exits with.
    """
    sources = tuple(sources)
    checks = tuple(checks)
    for name in checks:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; expected one of {sorted(CHECKS)}")
    _resolve_engine(engine)

    started = time.perf_counter()
    tasks = []
    for source in sources:
        total = source_size(source)
        chunks = max(1, min(jobs * 2, total)) if jobs > 1 else 1
        step = (total + chunks - 1) // chunks if total else 1
        for lo in range(0, total, step) if total else ():
            tasks.append(
                (source, lo, min(lo + step, total), checks, engine, pairs_per_graph, brute_limit)
            )

    if jobs > 1 and len(tasks) > 1:
        with Pool(processes=jobs) as pool:
            results = pool.map(_run_range_task, tasks)
    else:
        results = [_run_range(*task) for task in tasks]

    summary = SuiteSummary(sources=sources, checks=checks, engine=str(engine))
    summary.totals = {name: {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0} for name in checks}
    for graphs, pairs_seen, totals, failures in results:
        summary.graphs += graphs
        summary.pairs += pairs_seen
        for name, counts in totals.items():
            for verdict, count in counts.items():
                summary.totals[name][verdict] += count
        summary.failures.extend(failures)
    summary.elapsed = time.perf_counter() - started

    if out_dir and summary.failures:
        summary.counterexample_files = write_counterexamples(
            summary.failures[:max_counterexamples], out_dir, engine=str(engine)
        )
    return summary


# -- counterexample files --------------------------------------------------------

_HEADER_TAG = "menger-check"


def counterexample_text(report: CheckReport, engine: str = "default") -> str:
    """Serialize a failing instance as a replayable edge-list document."""
    element = report.element.replace(" ", "") or "-"
    names = {w: str(w) for w in report.graph.vertices}
    header = (
        f"# {_HEADER_TAG} check={report.check} engine={engine} "
        f"source={names[report.pair.u]} target={names[report.pair.v]} element={element}\n"
    )
    return header + serialize_graph(report.graph, names)


def write_counterexamples(reports, out_dir: str, engine: str = "default") -> tuple:
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for i, report in enumerate(reports, start=1):
        path = os.path.join(out_dir, f"counterexample-{i:04d}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(counterexample_text(report, engine=engine))
        written.append(path)
    return tuple(written)


def replay_counterexample(path: str, brute_limit: int = BRUTE_GROUND_TRUTH_LIMIT) -> CheckReport:
    """Re-run the check recorded in a counterexample file, same engine."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    first = text.splitlines()[0] if text.splitlines() else ""
    fields = dict(
        token.split("=", 1) for token in first.lstrip("# ").split() if "=" in token
    )
    if not first.startswith(f"# {_HEADER_TAG}") or "check" not in fields:
        raise ValueError(f"{path} does not carry a {_HEADER_TAG} header")
    document = parse_edgelist(text)
    graph = document.graph
    pair = TerminalPair(
        document.id_of(fields["source"]), document.id_of(fields["target"])
    )
    check = CHECKS[fields["check"]]
    return check(graph, pair, engine=fields.get("engine", "default"), brute_limit=brute_limit)
