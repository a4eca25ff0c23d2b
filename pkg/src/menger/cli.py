"""Batch command-line front end.

Subcommands: kappa, mu, paths, separators, verify. Input graphs come from
edge-list files; results go to stdout as a stable key-value text form (or
JSON with --json) whose bytes depend only on the invocation, never on
timing. Vertex tokens from the input are preserved verbatim; internal ids
never appear in output.

Exit codes: 0 success, 1 verification failure, 2 parse or spec error,
3 unknown vertex, 4 adjacent terminals.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .connectivity import (
    enumerate_minimum_separators,
    kappa_bruteforce,
    kappa_flow,
)
from .edgelist import parse_edgelist
from .errors import (
    AdjacentTerminalsError,
    CapExceededError,
    EdgeListParseError,
    UnknownVertexError,
)
from .graph import TerminalPair
from .paths import menger_paths, mu_flow


def _emit(args, entries, payload) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("".join(f"{key}: {value}\n" for key, value in entries))


def _load(args):
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise EdgeListParseError(f"cannot read {args.input}: {exc}")
    return parse_edgelist(text), text


def _pair(document, args) -> TerminalPair:
    return TerminalPair(document.id_of(args.source), document.id_of(args.target))


def _cmd_kappa(args) -> int:
    document, _ = _load(args)
    pair = _pair(document, args)
    engine = kappa_bruteforce if args.method == "brute" else kappa_flow
    result = engine(document.graph, pair)
    value = "unbounded" if result.is_unbounded else result.value
    entries = [
        ("command", "kappa"),
        ("source", args.source),
        ("target", args.target),
        ("method", args.method),
        ("kappa", value),
    ]
    _emit(args, entries, dict(entries))
    return 0


def _cmd_mu_paths(args) -> int:
    document, _ = _load(args)
    pair = _pair(document, args)
    builder = menger_paths if args.method == "recursive" else mu_flow
    system = builder(document.graph, pair)
    token_paths = sorted(
        tuple(document.token_of(w) for w in path.vertices) for path in system.paths
    )
    entries = [
        ("command", args.command),
        ("source", args.source),
        ("target", args.target),
        ("method", args.method),
        ("mu", len(system)),
    ]
    entries.extend(("path", " ".join(tokens)) for tokens in token_paths)
    payload = dict(entries[:5])
    payload["paths"] = [list(tokens) for tokens in token_paths]
    _emit(args, entries, payload)
    return 0


def _cmd_separators(args) -> int:
    document, _ = _load(args)
    graph = document.graph
    pair = _pair(document, args)
    enum = enumerate_minimum_separators(graph, pair, limit=args.limit)
    kappa = kappa_flow(graph, pair).value
    entries = [
        ("command", "separators"),
        ("source", args.source),
        ("target", args.target),
        ("kappa", kappa),
        ("count", len(enum)),
        ("truncated", "true" if enum.truncated else "false"),
    ]
    groups = []
    for separator, edges in enum.entries():
        members = sorted(document.token_of(w) for w in separator.members)
        token_edges = sorted(
            sorted((document.token_of(a), document.token_of(b))) for a, b in edges
        )
        entries.append(("separator", " ".join(members)))
        entries.extend(("induced-edge", " ".join(e)) for e in token_edges)
        groups.append({"members": members, "induced_edges": token_edges})
    payload = {
        "command": "separators",
        "source": args.source,
        "target": args.target,
        "kappa": kappa,
        "count": len(enum),
        "truncated": enum.truncated,
        "separators": groups,
    }
    _emit(args, entries, payload)
    return 0


def _parse_checks(raw: str) -> tuple:
    names = tuple(name.strip() for name in raw.split(",") if name.strip())
    for name in names:
        if name not in harness.CHECKS:
            raise ValueError(f"unknown check {name!r}; expected one of {sorted(harness.CHECKS)}")
    return names


def _verify_replay(args, text) -> int:
    report = harness.replay_counterexample(args.input)
    entries = [
        ("command", "verify"),
        ("input", args.input),
        ("mode", "replay"),
        ("check", report.check),
        ("verdict", report.verdict),
    ]
    if report.failed:
        entries.append(("element", report.element or "-"))
        entries.append(("observed", report.observed))
        entries.append(("expected", report.expected))
    _emit(args, entries, dict(entries))
    return 1 if report.failed else 0


def _verify_single_graph(args, checks) -> int:
    document, _ = _load(args)
    graph = document.graph
    if args.pairs is None:
        pairs = harness.non_adjacent_pairs(graph)
    else:
        rng = harness.SplitMix64(len(graph.vertices))
        pairs = harness.sample_pairs(graph, args.pairs, rng)
    totals = {name: {harness.PASS: 0, harness.FAIL: 0, harness.NOT_APPLICABLE: 0} for name in checks}
    failures = []
    for pair in pairs:
        for name in checks:
            report = harness.CHECKS[name](graph, pair, engine=args.engine)
            totals[name][report.verdict] += 1
            if report.failed:
                failures.append(report)
    if args.out and failures:
        harness.write_counterexamples(failures, args.out, engine=args.engine)
    return _emit_verify(
        args,
        mode_entries=[("input", args.input), ("mode", "graph")],
        checks=checks,
        graphs=1,
        pairs=len(pairs),
        totals=totals,
        failures=failures,
    )


def _emit_verify(args, mode_entries, checks, graphs, pairs, totals, failures) -> int:
    entries = [("command", "verify")]
    entries.extend(mode_entries)
    entries.extend(
        [
            ("engine", args.engine),
            ("checks", ",".join(checks)),
            ("graphs", graphs),
            ("pairs", pairs),
        ]
    )
    for name in checks:
        counts = totals[name]
        entries.append(
            (
                name,
                f"pass={counts[harness.PASS]} fail={counts[harness.FAIL]} "
                f"not-applicable={counts[harness.NOT_APPLICABLE]}",
            )
        )
    entries.append(("failures", len(failures)))
    entries.append(("result", "fail" if failures else "pass"))
    payload = dict(entries[:1] + mode_entries)
    payload.update(
        {
            "engine": args.engine,
            "checks": {name: totals[name] for name in checks},
            "graphs": graphs,
            "pairs": pairs,
            "failures": len(failures),
            "result": "fail" if failures else "pass",
        }
    )
    _emit(args, entries, payload)
    return 1 if failures else 0


def _cmd_verify(args) -> int:
    checks = _parse_checks(args.checks)
    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as fh:
            head = fh.readline()
        if head.startswith(f"# {harness._HEADER_TAG}"):
            return _verify_replay(args, head)
        return _verify_single_graph(args, checks)

    if args.exhaustive_n is not None:
        source = harness.Exhaustive(args.exhaustive_n)
        mode_entries = [("source-spec", harness.describe_source(source))]
    elif args.random is not None:
        try:
            n, p, count, seed = args.random
            source = harness.Random(int(n), float(p), int(count), int(seed))
        except (TypeError, ValueError):
            raise ValueError(f"bad --random spec {args.random!r}; expected N P COUNT SEED")
        mode_entries = [("source-spec", harness.describe_source(source))]
    else:
        raise ValueError("verify needs --input, --exhaustive-n, or --random")

    summary = harness.run_suite(
        [source],
        checks,
        jobs=args.jobs,
        engine=args.engine,
        pairs_per_graph=args.pairs,
        out_dir=args.out,
    )
    return _emit_verify(
        args,
        mode_entries=mode_entries,
        checks=checks,
        graphs=summary.graphs,
        pairs=summary.pairs,
        totals=summary.totals,
        failures=summary.failures,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="menger",
        description="Vertex connectivity, minimum separators and disjoint path systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_query(name, help_text, methods=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="edge-list file")
        p.add_argument("--source", required=True, help="source vertex token")
        p.add_argument("--target", required=True, help="target vertex token")
        if methods:
            p.add_argument("--method", choices=methods, default=methods[0])
        p.add_argument("--json", action="store_true", help="JSON output")
        return p

    p = add_query("kappa", "minimum separator order of a pair", methods=("flow", "brute"))
    p.set_defaults(handler=_cmd_kappa)

    for name in ("mu", "paths"):
        p = add_query(name, "maximum internally disjoint path system", methods=("flow", "recursive"))
        p.set_defaults(handler=_cmd_mu_paths)

    p = add_query("separators", "every minimum separator with its induced edges")
    p.add_argument("--limit", type=int, default=10_000)
    p.set_defaults(handler=_cmd_separators)

    p = sub.add_parser("verify", help="run theorem checks over a graph corpus")
    p.add_argument("--input", help="edge-list file (or counterexample replay file)")
    p.add_argument("--exhaustive-n", type=int, dest="exhaustive_n",
                   help="sweep all labeled graphs on N vertices (N <= 7)")
    p.add_argument("--random", nargs=4, metavar=("N", "P", "COUNT", "SEED"),
                   help="sweep COUNT seeded random G(N, P) graphs")
    p.add_argument("--checks", default=",".join(harness.ALL_CHECKS),
                   help="comma-separated subset of: " + ",".join(harness.ALL_CHECKS))
    p.add_argument("--engine", choices=sorted(harness.ENGINES), default="default",
                   help="kappa engine; 'broken' is the deliberately wrong test-mode engine")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--pairs", type=int, default=None,
                   help="sample at most this many non-adjacent pairs per graph")
    p.add_argument("--out", help="directory for counterexample files")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except EdgeListParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownVertexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AdjacentTerminalsError as exc:
        source = getattr(args, "source", None)
        if source is not None:
            print(
                f"error: terminals {args.source!r} and {args.target!r} are adjacent",
                file=sys.stderr,
            )
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
