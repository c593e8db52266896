import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hyp_st

import rosefold as rf
from rosefold.folding import NotFoldableError, random_fold_pick
from rosefold.graphs import Edge, LabeledGraph, NotConnectedError

from conftest import graph_st, nontrivial_word_st


def gen_words_st():
    return (
        hyp_st.lists(nontrivial_word_st(rank=2, max_len=6), min_size=1, max_size=3)
        .map(lambda ws: tuple(rf.free_reduce(w) for w in ws))
    )


def cyc(text, rank=2):
    return rf.parse_cyclic_word(text, rank)


def word(text, rank=2):
    return rf.parse_word(text, rank)


def wedge(texts, rank=2):
    return rf.wedge_of_words(tuple(word(t, rank) for t in texts), rank).graph


class TestFindFoldablePair:
    def test_rose_has_none(self):
        assert rf.find_foldable_pair(rf.rose(2)) is None

    def test_wedge_pair_is_the_b_inverses(self):
        g = wedge(("ab", "b"))
        pair = rf.find_foldable_pair(g)
        assert pair == (-2, -3)
        assert g.dir_label(-2) == g.dir_label(-3) == -2

    def test_parallel_edges(self):
        g = LabeledGraph(2, frozenset({0, 1}), (Edge(1, 0, 1, 1), Edge(2, 0, 1, 1)))
        assert rf.find_foldable_pair(g) == (1, 2)


class TestFoldOnce:
    def test_wedge_folds_to_rose(self):
        g = wedge(("ab", "b"))
        folded, step = rf.fold_once(g, rf.find_foldable_pair(g))
        assert rf.is_rose(folded)
        assert not step.betti_dropped
        assert step.identified_vertices == (0, 1)
        assert step.identified_edges == (2, 3)

    def test_parallel_edges_drop_betti(self):
        g = LabeledGraph(
            2,
            frozenset({0, 1}),
            (Edge(1, 0, 1, 1), Edge(2, 0, 1, 1), Edge(3, 1, 1, 2)),
        )
        folded, step = rf.fold_once(g, (1, 2))
        assert step.betti_dropped
        assert step.identified_vertices is None
        assert rf.betti(folded) == rf.betti(g) - 1

    def test_rose_not_foldable(self):
        with pytest.raises(NotFoldableError):
            rf.fold_once(rf.rose(2), (1, 2))


class TestFoldToCompletion:
    def test_wedge_one_step(self):
        seq = rf.fold_to_completion(wedge(("ab", "b")))
        assert len(seq.steps) == 1
        assert rf.is_rose(seq.final)

    def test_already_folded(self):
        seq = rf.fold_to_completion(rf.circuit(cyc("aab")))
        assert len(seq.steps) == 0

    def test_duplicate_circle_folds_onto_first(self):
        # one Betti-preserving fold merges the circles' start vertices,
        # then one Betti-dropping fold merges the duplicated edges
        seq = rf.fold_to_completion(wedge(("ab", "ab")))
        assert len(seq.steps) == 2
        assert [s.betti_dropped for s in seq.steps] == [False, True]
        assert rf.betti(seq.final) == 1
        assert rf.is_folded(seq.final)
        assert rf.reads_cyclic_word(seq.final, cyc("ab"))

    @given(graph_st(rank=2, max_vertices=5, max_edge_pairs=8))
    @settings(max_examples=40)
    def test_each_step_is_a_quotient_morphism(self, g):
        from rosefold.folding import fold_morphism

        seq = rf.fold_to_completion(g)
        for i, step in enumerate(seq.steps):
            m = fold_morphism(seq.snapshots[i], step, seq.snapshots[i + 1])
            assert rf.verify_morphism(m, seq.snapshots[i], seq.snapshots[i + 1])

    @given(graph_st(rank=3))
    def test_termination_bound_and_betti_trace(self, g):
        seq = rf.fold_to_completion(g)
        assert len(seq.steps) <= len(g.edges)
        for i, step in enumerate(seq.steps):
            drop = 1 if step.betti_dropped else 0
            assert rf.betti(seq.snapshots[i + 1]) == rf.betti(seq.snapshots[i]) - drop
        assert rf.is_folded(seq.final)

    @given(graph_st(rank=2, max_vertices=5, max_edge_pairs=8))
    @settings(max_examples=40)
    def test_confluence(self, g):
        det = rf.fold_to_completion(g).final
        rnd = rf.fold_to_completion(g, pick=random_fold_pick(random.Random(99))).final
        assert rf.is_label_isomorphic(det, rnd)


def all_short_classes(rank, max_len):
    out = []
    letters = [v for i in range(1, rank + 1) for v in (i, -i)]
    for k in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=k):
            ok = all(combo[(i + 1) % k] != -combo[i] for i in range(k))
            if ok:
                out.append(rf.canonical_rotation(rf.CyclicWord(combo, rank)))
    return sorted(set(out), key=lambda c: (len(c), c.letters))


class TestReadabilityMonotone:
    @given(graph_st(rank=2, max_vertices=4, max_edge_pairs=6))
    @settings(max_examples=20)
    def test_readable_words_survive_folding(self, g):
        classes = all_short_classes(2, 3)
        seq = rf.fold_to_completion(g)
        for before, after in zip(seq.snapshots, seq.snapshots[1:]):
            for c in classes:
                if rf.reads_cyclic_word(before, c):
                    assert rf.reads_cyclic_word(after, c)


class TestPi1Surjective:
    def test_examples(self):
        assert rf.is_pi1_surjective(wedge(("ab", "b")))
        assert not rf.is_pi1_surjective(rf.circuit(cyc("ab")))
        assert rf.is_pi1_surjective(rf.rose(3))

    def test_disconnected_rejected(self):
        g = rf.disjoint_circuits([cyc("a"), cyc("b")])
        with pytest.raises(NotConnectedError):
            rf.is_pi1_surjective(g)


class TestSubgroupGraph:
    def test_single_generator_loop(self):
        b = rf.subgroup_graph((word("a"),), 2)
        assert len(b.graph.vertices) == 1
        assert [e.label for e in b.graph.edges] == [1]

    def test_basis_gives_rose(self):
        b = rf.subgroup_graph((word("ab"), word("b")), 2)
        assert rf.is_rose(b.graph)

    def test_square_of_generator(self):
        b = rf.subgroup_graph((word("aa"),), 2)
        assert len(b.graph.vertices) == 2
        assert sorted(e.label for e in b.graph.edges) == [1, 1]
        assert rf.is_folded(b.graph)

    def test_membership_readability(self):
        from rosefold.graphs import path_from_vertex_reading

        b = rf.subgroup_graph((word("aa"), word("b")), 2)
        for member in ("aa", "b", "aab", "baa", "AAb", "aabaa"):
            w = rf.free_reduce(word(member))
            assert path_from_vertex_reading(b.graph, b.basepoint, w) is not None
        for outsider in ("a", "ab", "aaa"):
            assert path_from_vertex_reading(b.graph, b.basepoint, word(outsider)) is None

    @given(gen_words_st())
    @settings(max_examples=40)
    def test_generators_always_readable(self, gens):
        from rosefold.graphs import path_from_vertex_reading

        b = rf.subgroup_graph(gens, 2)
        for w in gens:
            assert path_from_vertex_reading(b.graph, b.basepoint, w) is not None
