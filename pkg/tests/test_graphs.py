import pytest
from hypothesis import given

import rosefold as rf
from rosefold.graphs import Edge, LabeledGraph, subdivide_edge
from rosefold.words import RankError

from conftest import class_set_st, graph_st


def cyc(text, rank=2):
    return rf.parse_cyclic_word(text, rank)


def word(text, rank=2):
    return rf.parse_word(text, rank)


class TestRose:
    def test_rank_two(self):
        r = rf.rose(2)
        assert len(r.vertices) == 1
        assert sorted(e.label for e in r.edges) == [1, 2]
        assert all(e.origin == e.terminus for e in r.edges)

    def test_rank_three(self):
        assert len(rf.rose(3).edges) == 3

    def test_rank_one_rejected(self):
        with pytest.raises(RankError):
            rf.rose(1)


class TestCircuit:
    def test_two_cycle(self):
        g = rf.circuit(cyc("ab"))
        assert len(g.vertices) == 2 and len(g.edges) == 2
        assert rf.reads_cyclic_word(g, cyc("ab"))

    def test_single_loop(self):
        g = rf.circuit(cyc("a"))
        assert len(g.vertices) == 1
        assert g.edges[0].origin == g.edges[0].terminus

    def test_three_cycle_labels(self):
        g = rf.circuit(cyc("aab"))
        assert sorted(e.label for e in g.edges) == [1, 1, 2]

    def test_inverse_letters_store_positively(self):
        g = rf.circuit(cyc("aB"))
        assert all(e.label > 0 for e in g.edges)
        assert rf.reads_cyclic_word(g, cyc("aB"))


class TestDisjointCircuits:
    def test_singleton(self):
        g = rf.disjoint_circuits([cyc("ab")])
        assert len(g.vertices) == 2 and len(g.edges) == 2

    def test_two_loops(self):
        g = rf.disjoint_circuits([cyc("a"), cyc("b")])
        assert len(g.vertices) == 2 and rf.betti(g) == 2

    def test_two_cycles(self):
        g = rf.disjoint_circuits([cyc("aab"), cyc("abAB")])
        assert len(g.vertices) == 7 and len(g.edges) == 7

    @given(class_set_st(rank=3))
    def test_every_class_readable(self, classes):
        g = rf.disjoint_circuits(classes, 3)
        for c in classes:
            assert rf.reads_cyclic_word(g, c)


class TestWedgeOfWords:
    def test_two_words(self):
        b = rf.wedge_of_words((word("ab"), word("b")), 2)
        assert b.basepoint == 0
        assert len(b.graph.vertices) == 2 and len(b.graph.edges) == 3
        assert rf.reads_cyclic_word(b.graph, cyc("ab"))
        assert rf.reads_cyclic_word(b.graph, cyc("b"))

    def test_single_loop(self):
        b = rf.wedge_of_words((word("a"),), 2)
        assert len(b.graph.vertices) == 1 and len(b.graph.edges) == 1

    def test_two_two_letter_words(self):
        b = rf.wedge_of_words((word("ab"), word("ba")), 2)
        assert len(b.graph.vertices) == 3 and len(b.graph.edges) == 4

    def test_unreduced_rejected(self):
        with pytest.raises(ValueError):
            rf.wedge_of_words((word("aA"),), 2)
        with pytest.raises(ValueError):
            rf.wedge_of_words((word(""),), 2)


class TestBetti:
    def test_examples(self):
        assert rf.betti(rf.rose(2)) == 2
        assert rf.betti(rf.circuit(cyc("aab"))) == 1
        assert rf.betti(rf.disjoint_circuits([cyc("a"), cyc("b")])) == 2

    @given(graph_st(rank=2))
    def test_invariant_under_subdivision(self, g):
        if not g.edges:
            return
        assert rf.betti(subdivide_edge(g, g.edges[0].eid)) == rf.betti(g)


def tailed_circuit():
    """circuit('ab') with a one-edge tail hanging off vertex 0."""
    g = rf.circuit(cyc("ab"))
    return LabeledGraph(2, g.vertices | {9}, g.edges + (Edge(9, 0, 9, 1),))


class TestCore:
    def test_circuit_unchanged(self):
        g = rf.circuit(cyc("ab"))
        assert rf.core(g) == g

    def test_tail_stripped(self):
        assert rf.core(tailed_circuit()) == rf.circuit(cyc("ab"))

    def test_single_edge_becomes_empty(self):
        g = LabeledGraph(2, frozenset({0, 1}), (Edge(1, 0, 1, 1),))
        c = rf.core(g)
        assert not c.vertices and not c.edges

    def test_core_keeps_betti_of_connected_graph(self):
        g = tailed_circuit()
        assert rf.betti(rf.core(g)) == rf.betti(g)

    @given(graph_st(rank=3))
    def test_idempotent_and_min_valence(self, g):
        c = rf.core(g)
        assert rf.core(c) == c
        assert all(c.valence(v) >= 2 for v in c.vertices)


class TestCorePair:
    def test_circuit_based_unchanged(self):
        b = rf.BasedGraph(rf.circuit(cyc("ab")), 0)
        assert rf.core_pair(b) == b

    def test_wedge_unchanged(self):
        b = rf.wedge_of_words((word("ab"), word("b")), 2)
        assert rf.core_pair(b) == b

    def test_basepoint_survives_and_remote_component_dropped(self):
        # basepoint 0 dangles off vertex 1; a loop component at 5 is
        # unreachable from the basepoint. The based core keeps only the
        # basepoint component, then deletes the dangling vertex.
        g = LabeledGraph(
            2, frozenset({0, 1, 5}), (Edge(1, 0, 1, 1), Edge(2, 5, 5, 2))
        )
        result = rf.core_pair(rf.BasedGraph(g, 0))
        assert result.graph.vertices == frozenset({0})
        assert result.graph.edges == ()
        assert result.basepoint == 0


class TestIsFolded:
    def test_examples(self):
        assert rf.is_folded(rf.rose(2))
        assert not rf.is_folded(rf.wedge_of_words((word("ab"), word("b")), 2).graph)
        assert rf.is_folded(rf.circuit(cyc("aab")))

    def test_parallel_edges_not_folded(self):
        g = LabeledGraph(2, frozenset({0, 1}), (Edge(1, 0, 1, 1), Edge(2, 0, 1, 1)))
        assert not rf.is_folded(g)


class TestReadsCyclicWord:
    def test_rose_reads_everything(self):
        assert rf.reads_cyclic_word(rf.rose(2), cyc("abAB"))

    def test_circuit_reads_its_word(self):
        assert rf.reads_cyclic_word(rf.circuit(cyc("ab")), cyc("ab"))

    def test_circuit_rejects_other_word(self):
        assert not rf.reads_cyclic_word(rf.circuit(cyc("ab")), cyc("aab"))

    def test_rank_mismatch(self):
        with pytest.raises(RankError):
            rf.reads_cyclic_word(rf.rose(2), cyc("ab", rank=3))

    def test_rotation_invariant(self):
        g = rf.circuit(cyc("aab"))
        for rot in ("aab", "aba", "baa"):
            assert rf.reads_cyclic_word(g, cyc(rot))

    def test_unreduced_paths_allowed(self):
        # A single a-loop reads a^k for every k, including via backtracking
        # paths; readability does not require the path be reduced.
        g = rf.circuit(cyc("a"))
        assert rf.reads_cyclic_word(g, cyc("aa"))
        assert not rf.reads_cyclic_word(g, cyc("b"))


class TestMorphisms:
    def test_unique_morphism_to_rose(self):
        g = rf.circuit(cyc("ab"))
        assert rf.verify_morphism(rf.rose_morphism(g), g, rf.rose(2))

    def test_identity_on_rose(self):
        r = rf.rose(2)
        assert rf.verify_morphism(rf.rose_morphism(r), r, r)

    def test_label_violation_rejected(self):
        g = rf.circuit(cyc("ab"))
        bad = rf.GraphMorphism(vertex_map={0: 0, 1: 0}, edge_map={1: 2, 2: 2})
        assert not rf.verify_morphism(bad, g, rf.rose(2))

    def test_partial_map_rejected(self):
        g = rf.circuit(cyc("ab"))
        partial = rf.GraphMorphism(vertex_map={0: 0}, edge_map={1: 1, 2: 2})
        assert not rf.verify_morphism(partial, g, rf.rose(2))

    @given(graph_st(rank=3))
    def test_rose_morphism_always_verifies(self, g):
        assert rf.verify_morphism(rf.rose_morphism(g), g, rf.rose(3))


class TestLabelIsomorphism:
    def test_renamed_vertices(self):
        g = rf.circuit(cyc("ab"))
        h = LabeledGraph(2, frozenset({7, 9}), (Edge(3, 7, 9, 1), Edge(5, 9, 7, 2)))
        assert rf.is_label_isomorphic(g, h)

    def test_label_difference_detected(self):
        assert not rf.is_label_isomorphic(rf.circuit(cyc("ab")), rf.circuit(cyc("aa")))

    def test_direction_matters(self):
        a = LabeledGraph(2, frozenset({0, 1}), (Edge(1, 0, 1, 1), Edge(2, 0, 1, 2)))
        b = LabeledGraph(2, frozenset({0, 1}), (Edge(1, 0, 1, 1), Edge(2, 1, 0, 2)))
        assert not rf.is_label_isomorphic(a, b)

    @given(graph_st(rank=2))
    def test_reflexive_under_renaming(self, g):
        shifted = LabeledGraph(
            g.rank,
            frozenset(v + 100 for v in g.vertices),
            tuple(Edge(e.eid + 50, e.origin + 100, e.terminus + 100, e.label) for e in g.edges),
        )
        assert rf.is_label_isomorphic(g, shifted)


class TestTextFormats:
    def test_round_trip(self):
        g = rf.wedge_of_words((word("ab"), word("b")), 2).graph
        assert rf.parse_graph_text(rf.graph_to_text(g)) == g

    def test_uppercase_label_normalizes(self):
        g = rf.parse_graph_text("rank 2\nvertex 0\nvertex 1\nedge 1 0 1 A\n")
        (e,) = g.edges
        assert (e.origin, e.terminus, e.label) == (1, 0, 1)

    def test_missing_rank_rejected(self):
        with pytest.raises(ValueError):
            rf.parse_graph_text("vertex 0\n")

    def test_dot_contains_edges(self):
        dot = rf.graph_to_dot(rf.circuit(cyc("ab")))
        assert 'v0 -> v1 [label="a"]' in dot
