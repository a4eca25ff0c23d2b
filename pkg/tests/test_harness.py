"""Graph sources, theorem checks, suite running, counterexample replay."""

import pytest

import oracles
from menger import (
    AdjacentTerminalsError,
    CapExceededError,
    Graph,
    PreconditionViolatedError,
    TerminalPair,
    UnknownEdgeError,
)
from menger.harness import (
    ALL_CHECKS,
    FAIL,
    NOT_APPLICABLE,
    PASS,
    Exhaustive,
    Random,
    SplitMix64,
    check_contraction_lemma,
    check_contraction_sweep,
    check_lemma1,
    check_menger,
    check_theorem1,
    counterexample_text,
    generate,
    non_adjacent_pairs,
    replay_counterexample,
    run_suite,
    sample_pairs,
    write_counterexamples,
)
from menger.edgelist import parse_edgelist


def build(edges, isolated=()):
    return Graph.from_edge_list(edges, isolated=isolated)


TWO_ROUTES = build(oracles.path_edges(0, 1, 2, 5) + oracles.path_edges(0, 3, 4, 5))
P05 = TerminalPair(0, 5)


class TestSplitMix64:
    def test_pinned_reference_outputs(self):
        # Fixed forever: splitmix64 with the published constants.
        r = SplitMix64(0)
        assert r.next_u64() == 0xE220A8397B1DCDAF
        assert r.next_u64() == 0x6E789E6AA1B965F4
        r = SplitMix64(1)
        assert [r.next_u64() for _ in range(3)] == [
            0x910A2DEC89025CC1,
            0xBEEB8DA1658EEC67,
            0xF893A2EEFB32555E,
        ]

    def test_same_seed_same_stream(self):
        a, b = SplitMix64(987), SplitMix64(987)
        assert [a.next_u64() for _ in range(50)] == [b.next_u64() for _ in range(50)]

    def test_unit_draws_land_in_range(self):
        r = SplitMix64(5)
        draws = [r.next_unit() for _ in range(200)]
        assert all(0.0 <= x < 1.0 for x in draws)


class TestGenerate:
    def test_exhaustive_counts(self):
        assert len(list(generate(Exhaustive(3)))) == 8
        assert len(list(generate(Exhaustive(4)))) == 64

    def test_exhaustive_every_graph_once(self):
        graphs = list(generate(Exhaustive(3)))
        assert len(set(graphs)) == 8
        assert Graph.from_edge_list([], isolated=range(3)) in graphs
        assert Graph.from_edge_list(oracles.complete_edges(range(3))) in graphs

    def test_exhaustive_cap(self):
        with pytest.raises(CapExceededError):
            list(generate(Exhaustive(8)))

    def test_random_reproducible(self):
        a = list(generate(Random(10, 0.3, 5, seed=1)))
        b = list(generate(Random(10, 0.3, 5, seed=1)))
        assert a == b
        assert len(a) == 5
        assert all(g.vertices == frozenset(range(10)) for g in a)

    def test_random_seed_changes_stream(self):
        a = list(generate(Random(10, 0.3, 5, seed=1)))
        b = list(generate(Random(10, 0.3, 5, seed=2)))
        assert a != b

    def test_sample_pairs_deterministic_and_bounded(self):
        g = build(oracles.cycle_edges(*range(9)))
        got1 = sample_pairs(g, 4, SplitMix64(7))
        got2 = sample_pairs(g, 4, SplitMix64(7))
        assert got1 == got2
        assert len(got1) == 4
        assert set(got1) <= set(non_adjacent_pairs(g))
        assert sample_pairs(g, None, SplitMix64(7)) == non_adjacent_pairs(g)


class TestCheckLemma1:
    def test_path_within_bounds(self):
        g = build([("u", "a"), ("a", "v")])
        assert check_lemma1(g, TerminalPair("u", "v")).verdict == PASS

    def test_c4_within_bounds(self):
        g = build(oracles.cycle_edges("u", "a", "v", "b"))
        assert check_lemma1(g, TerminalPair("u", "v")).verdict == PASS

    def test_adjacent_rejected(self):
        with pytest.raises(AdjacentTerminalsError):
            check_lemma1(build([("u", "v")]), TerminalPair("u", "v"))

    def test_exhaustive_small_sweep_passes(self):
        for n in range(5):
            for g in generate(Exhaustive(n)):
                for pair in non_adjacent_pairs(g):
                    assert check_lemma1(g, pair, engine="brute").verdict == PASS


class TestCheckTheorem1:
    def test_k4_minus_uv_edge_inside_separator(self):
        g = build([e for e in oracles.complete_edges(range(4)) if set(e) != {0, 3}])
        report = check_theorem1(g, TerminalPair(0, 3))
        assert report.verdict == PASS
        assert report.element == ""  # a real (non-vacuous) pass

    def test_c4_vacuous(self):
        g = build(oracles.cycle_edges("u", "a", "v", "b"))
        report = check_theorem1(g, TerminalPair("u", "v"))
        assert report.verdict == PASS
        assert "vacuous" in report.element

    def test_exhaustive_small_sweep_passes(self):
        for n in range(5):
            for g in generate(Exhaustive(n)):
                for pair in non_adjacent_pairs(g):
                    assert check_theorem1(g, pair).verdict == PASS


class TestCheckContraction:
    def test_two_routes_hypothesis_holds_and_passes(self):
        report = check_contraction_lemma(TWO_ROUTES, P05, 1, 2)
        assert report.verdict == PASS

    def test_chord_breaks_hypothesis(self):
        g = build(list(TWO_ROUTES.sorted_edges) + [(1, 3)])
        report = check_contraction_lemma(g, P05, 1, 2)
        assert report.verdict == NOT_APPLICABLE

    def test_terminal_endpoint_rejected(self):
        with pytest.raises(PreconditionViolatedError):
            check_contraction_lemma(TWO_ROUTES, P05, 0, 1)

    def test_missing_edge_rejected(self):
        with pytest.raises(UnknownEdgeError):
            check_contraction_lemma(TWO_ROUTES, P05, 1, 3)

    def test_sweep_reports_na_without_interior_edge(self):
        g = build(oracles.cycle_edges("u", "a", "v", "b"))
        report = check_contraction_sweep(g, TerminalPair("u", "v"))
        assert report.verdict == NOT_APPLICABLE
        assert "no interior edge" in report.observed

    def test_sweep_covers_both_orientations(self):
        assert check_contraction_sweep(TWO_ROUTES, P05).verdict == PASS


class TestCheckMenger:
    def test_c4(self):
        g = build(oracles.cycle_edges("u", "a", "v", "b"))
        assert check_menger(g, TerminalPair("u", "v")).verdict == PASS

    def test_disconnected(self):
        g = build([], isolated=["u", "v"])
        assert check_menger(g, TerminalPair("u", "v")).verdict == PASS

    def test_broken_engine_detected(self):
        g = build(oracles.cycle_edges("u", "a", "v", "b"))
        report = check_menger(g, TerminalPair("u", "v"), engine="broken")
        assert report.verdict == FAIL
        assert report.failed

    def test_brute_limit_skips_brute_engines(self):
        g = build(oracles.cycle_edges("u", "a", "v", "b"))
        assert check_menger(g, TerminalPair("u", "v"), brute_limit=0).verdict == PASS


class TestRunSuite:
    def test_exhaustive4_all_checks_clean(self):
        summary = run_suite([Exhaustive(4)], ALL_CHECKS)
        assert summary.graphs == 64
        assert not summary.failed
        for name in ALL_CHECKS:
            assert summary.verdict_count(name, FAIL) == 0
        assert summary.verdict_count("lemma1", PASS) == summary.pairs
        assert summary.verdict_count("contraction", NOT_APPLICABLE) > 0

    def test_parallel_matches_serial(self):
        serial = run_suite([Exhaustive(4)], ["menger", "contraction"], jobs=1)
        parallel = run_suite([Exhaustive(4)], ["menger", "contraction"], jobs=3)
        assert serial.totals == parallel.totals
        assert (serial.graphs, serial.pairs) == (parallel.graphs, parallel.pairs)

    def test_unknown_check_rejected(self):
        with pytest.raises(ValueError):
            run_suite([Exhaustive(2)], ["nonsense"])

    def test_unknown_engine_rejected(self):
        with pytest.raises(ValueError):
            run_suite([Exhaustive(2)], ["menger"], engine="bogus")

    def test_pairs_per_graph_sampling(self):
        summary = run_suite([Random(10, 0.2, 5, 3)], ["lemma1"], pairs_per_graph=2)
        assert summary.pairs <= 10
        again = run_suite([Random(10, 0.2, 5, 3)], ["lemma1"], pairs_per_graph=2)
        assert summary.totals == again.totals and summary.pairs == again.pairs

    def test_broken_engine_fails_and_writes_counterexamples(self, tmp_path):
        out = tmp_path / "cex"
        summary = run_suite(
            [Exhaustive(3)], ["menger"], engine="broken", out_dir=str(out),
            max_counterexamples=5,
        )
        assert summary.failed
        assert summary.verdict_count("menger", FAIL) > 0
        files = sorted(out.iterdir())
        assert 0 < len(files) <= 5
        assert summary.counterexample_files == tuple(str(p) for p in files)


class TestCounterexamples:
    def _failing_report(self):
        g = build(oracles.cycle_edges("u", "a", "v", "b"))
        return check_menger(g, TerminalPair("u", "v"), engine="broken")

    def test_header_names_check_and_pair(self):
        text = counterexample_text(self._failing_report(), engine="broken")
        head = text.splitlines()[0]
        assert head.startswith("# menger-check")
        assert "check=menger" in head
        assert "source=u" in head and "target=v" in head
        assert "engine=broken" in head

    def test_roundtrip_reproduces_graph_and_verdict(self, tmp_path):
        report = self._failing_report()
        (path,) = write_counterexamples([report], str(tmp_path), engine="broken")
        document = parse_edgelist(open(path).read())
        tokens = set(document.tokens)
        assert tokens == {"u", "a", "v", "b"}
        token_edges = {
            frozenset((document.token_of(a), document.token_of(b)))
            for a, b in document.graph.edges
        }
        assert token_edges == {frozenset(p) for p in oracles.cycle_edges("u", "a", "v", "b")}
        replayed = replay_counterexample(path)
        assert replayed.verdict == report.verdict == FAIL

    def test_replay_with_default_engine_passes(self, tmp_path):
        # The instance only fails under the recorded broken engine; replaying
        # under the default engine must pass, which is why the header pins it.
        report = self._failing_report()
        (path,) = write_counterexamples([report], str(tmp_path), engine="default")
        assert replay_counterexample(path).verdict == PASS

    def test_replay_rejects_headerless_files(self, tmp_path):
        target = tmp_path / "plain.txt"
        target.write_text("u v\n")
        with pytest.raises(ValueError):
            replay_counterexample(str(target))
