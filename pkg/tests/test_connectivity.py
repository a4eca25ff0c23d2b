"""Connectivity engines, separators, and their cross-validation."""

import itertools

import pytest

import oracles
from menger import (
    AdjacentTerminalsError,
    Connectivity,
    Graph,
    TerminalInSetError,
    TerminalPair,
    UnknownVertexError,
    enumerate_minimum_separators,
    is_separator,
    kappa_bruteforce,
    kappa_flow,
    min_vertex_cut,
)
from menger.harness import Exhaustive, Random, generate, non_adjacent_pairs


def build(edges, isolated=()):
    return Graph.from_edge_list(edges, isolated=isolated)


PATH_UAV = build([("u", "a"), ("a", "v")])
C4 = build([("u", "a"), ("a", "v"), ("v", "b"), ("b", "u")])
UV = TerminalPair("u", "v")


class TestConnectivityValue:
    def test_finite_roundtrip(self):
        k = Connectivity.finite(2)
        assert not k.is_unbounded
        assert k.value == 2
        assert str(k) == "2"

    def test_unbounded_refuses_arithmetic_access(self):
        k = Connectivity.unbounded()
        assert k.is_unbounded
        assert str(k) == "unbounded"
        with pytest.raises(ValueError):
            k.value

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            Connectivity.finite(-1)


class TestIsSeparator:
    def test_path_interior_separates(self):
        assert is_separator(PATH_UAV, UV, {"a"})

    def test_empty_set_does_not_separate_connected_pair(self):
        assert not is_separator(PATH_UAV, UV, set())

    def test_c4_single_vertex_leaves_detour(self):
        assert not is_separator(C4, UV, {"a"})
        assert is_separator(C4, UV, {"a", "b"})

    def test_adjacent_pair_is_never_separated(self):
        g = build([("u", "v"), ("u", "a"), ("a", "v")])
        assert not is_separator(g, UV, {"a"})

    def test_terminal_in_set_rejected(self):
        with pytest.raises(TerminalInSetError):
            is_separator(PATH_UAV, UV, {"u"})

    def test_unknown_member_rejected(self):
        with pytest.raises(UnknownVertexError):
            is_separator(PATH_UAV, UV, {"zz"})

    def test_empty_separator_for_disconnected_pair(self):
        g = build([], isolated=["u", "v"])
        assert is_separator(g, UV, set())


class TestKappaBruteforce:
    def test_path(self):
        assert kappa_bruteforce(PATH_UAV, UV).value == 1

    def test_c4_needs_both_interiors(self):
        assert kappa_bruteforce(C4, UV).value == 2

    def test_k5_minus_uv(self):
        # Independent subset-enumeration oracle gives 3; frozen here.
        vertices = list(range(5))
        edges = [e for e in oracles.complete_edges(vertices) if set(e) != {0, 4}]
        assert oracles.kappa(vertices, edges, 0, 4) == 3
        assert kappa_bruteforce(build(edges), TerminalPair(0, 4)).value == 3

    def test_adjacent_pair_unbounded(self):
        g = build([("u", "v")])
        assert kappa_bruteforce(g, UV).is_unbounded

    def test_disconnected_pair_is_zero(self):
        g = build([("u", "a")], isolated=["v"])
        assert kappa_bruteforce(g, UV).value == 0

    def test_unknown_terminal(self):
        with pytest.raises(UnknownVertexError):
            kappa_bruteforce(PATH_UAV, TerminalPair("u", "zz"))


class TestKappaFlow:
    def test_path(self):
        assert kappa_flow(PATH_UAV, UV).value == 1

    def test_disconnected_zero_flow(self):
        g = build([("u", "a")], isolated=["v"])
        assert kappa_flow(g, UV).value == 0

    def test_adjacent_pair_unbounded(self):
        assert kappa_flow(build([("u", "v")]), UV).is_unbounded

    def test_petersen_every_non_adjacent_pair_is_three(self):
        # Confirmed against kappa_bruteforce below; value frozen at 3.
        g = build(oracles.petersen_edges())
        for pair in non_adjacent_pairs(g):
            assert kappa_flow(g, pair).value == 3
            assert kappa_bruteforce(g, pair).value == 3

    def test_engines_agree_exhaustively_to_five_vertices(self):
        for n in range(6):
            for g in generate(Exhaustive(n)):
                for pair in non_adjacent_pairs(g):
                    assert kappa_flow(g, pair) == kappa_bruteforce(g, pair)

    @pytest.mark.parametrize("n,p,seed", [(6, 0.4, 1), (7, 0.35, 2), (8, 0.3, 3)])
    def test_engines_agree_on_random_corpus(self, n, p, seed):
        for g in generate(Random(n, p, 30, seed)):
            for pair in non_adjacent_pairs(g):
                assert kappa_flow(g, pair) == kappa_bruteforce(g, pair)

    def test_monotone_under_edge_deletion(self):
        for g in generate(Random(7, 0.4, 25, 5)):
            for pair in non_adjacent_pairs(g):
                k = kappa_flow(g, pair).value
                for e in g.sorted_edges:
                    assert kappa_flow(g.delete_edge(e), pair).value <= k


class TestMinVertexCut:
    def test_path_unique_candidate(self):
        assert min_vertex_cut(PATH_UAV, UV).members == {"a"}

    def test_two_disjoint_routes_unique_minimum(self):
        g = build([("u", "a"), ("a", "v"), ("u", "b"), ("b", "v")])
        assert min_vertex_cut(g, UV).members == {"a", "b"}

    def test_c6_cut_takes_one_vertex_per_arc(self):
        # Derived check: witness must separate and match kappa (2 by oracle).
        g = build(oracles.cycle_edges("u", "a", "b", "v", "c", "d"))
        cut = min_vertex_cut(g, UV)
        assert len(cut.members) == 2 == kappa_bruteforce(g, UV).value
        assert is_separator(g, UV, cut.members)
        assert cut.members & {"a", "b"} and cut.members & {"c", "d"}

    def test_adjacent_rejected(self):
        with pytest.raises(AdjacentTerminalsError):
            min_vertex_cut(build([("u", "v")]), UV)

    def test_disconnected_gives_empty_cut(self):
        g = build([], isolated=["u", "v"])
        assert min_vertex_cut(g, UV).members == frozenset()

    def test_witness_valid_on_exhaustive_small_graphs(self):
        for n in range(6):
            for g in generate(Exhaustive(n)):
                for pair in non_adjacent_pairs(g):
                    cut = min_vertex_cut(g, pair)
                    assert is_separator(g, pair, cut.members) or not cut.members
                    if cut.members:
                        assert is_separator(g, pair, cut.members)
                    else:
                        assert not g.has_path(pair.u, pair.v)
                    assert len(cut.members) == kappa_flow(g, pair).value

    def test_deterministic(self):
        g = build(oracles.cycle_edges("u", "a", "b", "v", "c", "d"))
        assert min_vertex_cut(g, UV) == min_vertex_cut(g, UV)


class TestEnumerateMinimumSeparators:
    def test_path_single_separator(self):
        enum = enumerate_minimum_separators(PATH_UAV, UV)
        assert [s.members for s in enum.separators] == [frozenset({"a"})]
        assert enum.induced_edges == (frozenset(),)
        assert not enum.truncated

    def test_two_singletons_on_longer_path(self):
        g = build([("u", "a"), ("a", "b"), ("b", "v")])
        enum = enumerate_minimum_separators(g, UV)
        assert [s.members for s in enum.separators] == [frozenset({"a"}), frozenset({"b"})]

    def test_k4_minus_uv(self):
        # Brute force over all subsets: the unique minimum separator is the
        # other two vertices, and it induces their joining edge.
        g = build([e for e in oracles.complete_edges(range(4)) if set(e) != {0, 3}])
        pair = TerminalPair(0, 3)
        enum = enumerate_minimum_separators(g, pair)
        assert [s.members for s in enum.separators] == [frozenset({1, 2})]
        assert enum.induced_edges == (frozenset({(1, 2)}),)

    def test_disconnected_pair_has_empty_separator(self):
        g = build([], isolated=["u", "v"])
        enum = enumerate_minimum_separators(g, UV)
        assert [s.members for s in enum.separators] == [frozenset()]

    def test_adjacent_rejected(self):
        with pytest.raises(AdjacentTerminalsError):
            enumerate_minimum_separators(build([("u", "v")]), UV)

    def test_limit_truncation(self):
        # Three disjoint 2-chains give 2^3 minimum separators of size 3.
        edges = []
        for i in range(3):
            edges += [("u", f"a{i}"), (f"a{i}", f"b{i}"), (f"b{i}", "v")]
        g = build(edges)
        full = enumerate_minimum_separators(g, UV)
        assert len(full) == 8 and not full.truncated
        cut = enumerate_minimum_separators(g, UV, limit=5)
        assert len(cut) == 5 and cut.truncated
        assert list(cut.separators) == list(full.separators[:5])

    def test_all_members_minimum_and_lexicographic(self):
        for g in generate(Random(7, 0.35, 20, 9)):
            for pair in non_adjacent_pairs(g):
                enum = enumerate_minimum_separators(g, pair)
                k = kappa_bruteforce(g, pair).value
                members = [tuple(sorted(s.members)) for s in enum.separators]
                assert members == sorted(members)
                for sep, edges in enum.entries():
                    assert len(sep.members) == k
                    assert is_separator(g, pair, sep.members)
                    assert edges == g.induced_edges(sep.members)
                # no smaller subset separates (k is genuinely minimum)
                interior = [w for w in g.sorted_vertices if w not in (pair.u, pair.v)]
                if k:
                    for subset in itertools.combinations(interior, k - 1):
                        assert not is_separator(g, pair, subset)
