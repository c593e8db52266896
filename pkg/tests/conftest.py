import random

from hypothesis import settings, strategies as st

import rosefold as rf
from rosefold.oracles import random_labeled_graph

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def letter_st(rank: int):
    return st.integers(-rank, rank).filter(lambda v: v != 0)


def word_st(rank: int = 2, max_len: int = 10):
    return st.lists(letter_st(rank), max_size=max_len).map(
        lambda ls: rf.Word(tuple(ls), rank)
    )


def nontrivial_word_st(rank: int = 2, max_len: int = 10):
    return word_st(rank, max_len).filter(lambda w: len(rf.free_reduce(w)) > 0)


def class_st(rank: int = 2, max_len: int = 8):
    return nontrivial_word_st(rank, max_len).map(rf.conjugacy_class)


def class_set_st(rank: int = 2, max_classes: int = 4):
    return st.lists(class_st(rank), min_size=1, max_size=max_classes)


def relabeling_st(rank: int):
    return st.builds(
        lambda perm, signs: rf.SignedRelabeling(
            tuple(s * p for s, p in zip(signs, perm))
        ),
        st.permutations(list(range(1, rank + 1))),
        st.lists(st.sampled_from((1, -1)), min_size=rank, max_size=rank),
    )


def graph_st(rank: int = 2, max_vertices: int = 6, max_edge_pairs: int = 10):
    return st.integers(0, 10**9).map(
        lambda seed: random_labeled_graph(
            random.Random(seed), rank, max_vertices, max_edge_pairs
        )
    )
