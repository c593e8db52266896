import pytest
from hypothesis import given, strategies as st

import rosefold as rf
from rosefold.words import RankError, TrivialWordError, WordSyntaxError, letter_key

from conftest import nontrivial_word_st, word_st


class TestParse:
    def test_transliteration(self):
        assert rf.parse_word("abA", 2).letters == (1, 2, -1)

    def test_empty_is_identity(self):
        assert rf.parse_word("", 2).letters == ()

    def test_rank_error(self):
        with pytest.raises(RankError):
            rf.parse_word("abc", 2)

    def test_syntax_error(self):
        with pytest.raises(WordSyntaxError):
            rf.parse_word("a-b", 3)

    @given(st.text(alphabet="abABcC", max_size=12))
    def test_print_round_trip(self, text):
        assert str(rf.parse_word(text, 3)) == text


class TestFreeReduce:
    @pytest.mark.parametrize(
        "text,expected",
        [("abBA", ""), ("abA", "abA"), ("aBba", "aa")],
    )
    def test_examples(self, text, expected):
        assert str(rf.free_reduce(rf.parse_word(text, 2))) == expected

    @given(word_st(rank=3))
    def test_idempotent_and_nonincreasing(self, w):
        r = rf.free_reduce(w)
        assert rf.free_reduce(r) == r
        assert len(r) <= len(w)

    @given(word_st(rank=3))
    def test_word_times_inverse_cancels(self, w):
        assert rf.product(w, rf.invert(w)).letters == ()


class TestInvert:
    @pytest.mark.parametrize("text,expected", [("ab", "BA"), ("", ""), ("aBa", "AbA")])
    def test_examples(self, text, expected):
        assert str(rf.invert(rf.parse_word(text, 2))) == expected

    @given(word_st(rank=3))
    def test_involution(self, w):
        assert rf.invert(rf.invert(w)) == w


class TestCyclicReduce:
    @pytest.mark.parametrize(
        "text,core,conj",
        [("abA", "b", "a"), ("ab", "ab", ""), ("aabAA", "b", "aa")],
    )
    def test_examples(self, text, core, conj):
        c, u = rf.cyclic_reduce(rf.parse_word(text, 2))
        assert (str(c), str(u)) == (core, conj)

    def test_trivial_rejected(self):
        with pytest.raises(TrivialWordError):
            rf.cyclic_reduce(rf.parse_word("aA", 2))

    @given(nontrivial_word_st(rank=3))
    def test_reconstruction(self, w):
        c, u = rf.cyclic_reduce(w)
        rebuilt = rf.product(u, rf.Word(c.letters, w.rank), rf.invert(u))
        assert rebuilt == rf.free_reduce(w)
        assert len(c) <= len(rf.free_reduce(w))


class TestCanonicalRotation:
    @pytest.mark.parametrize(
        "text,expected", [("ba", "ab"), ("aab", "aab"), ("bab", "abb")]
    )
    def test_examples(self, text, expected):
        assert str(rf.canonical_rotation(rf.parse_cyclic_word(text, 2))) == expected

    @given(nontrivial_word_st(rank=3), word_st(rank=3))
    def test_conjugation_invariance(self, w, u):
        assert rf.conjugacy_class(rf.conjugate(w, u)) == rf.conjugacy_class(w)

    def test_letter_order(self):
        # a < A < b < B < ...
        assert sorted([2, -1, 1, -2], key=letter_key) == [1, -1, 2, -2]

    def test_inverse_class_is_distinct(self):
        # [g] and [g inverse] are different classes
        w = rf.parse_word("aab", 2)
        assert rf.conjugacy_class(w) != rf.conjugacy_class(rf.invert(w))


class TestRankDiscipline:
    def test_rank_below_two_rejected(self):
        with pytest.raises(RankError):
            rf.Word((1,), 1)

    def test_mixed_rank_concat_rejected(self):
        with pytest.raises(RankError):
            rf.product(rf.parse_word("a", 2), rf.parse_word("a", 3))

    def test_cyclic_word_requires_cyclically_reduced(self):
        with pytest.raises(ValueError):
            rf.parse_cyclic_word("abA", 2)
        with pytest.raises(TrivialWordError):
            rf.parse_cyclic_word("", 2)
