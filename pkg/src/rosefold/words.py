"""Words over a fixed free basis, reduction, and canonical conjugacy classes.

A letter is a nonzero integer: ``i`` is the i-th generator, ``-i`` its
inverse.  Text form uses lowercase a..z for generators and the matching
uppercase letter for the inverse, so parseable rank is capped at 26.
The total letter order used everywhere for canonical forms and stable
output is a < A < b < B < ... (generator before its inverse, then by
index); see :func:`letter_key`.

All values are immutable and all operations are pure functions, so they
are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

MAX_PARSE_RANK = 26


class WordSyntaxError(ValueError):
    """Input text is not a well-formed word."""


class RankError(ValueError):
    """A letter index exceeds the ambient rank, or two ranks disagree."""


class TrivialWordError(ValueError):
    """The identity has no cyclically reduced representative."""


def inverse_letter(letter: int) -> int:
    return -letter


def letter_key(letter: int) -> int:
    """Sort key realizing the total order a < A < b < B < ..."""
    return 2 * abs(letter) + (0 if letter > 0 else 1)


def letter_to_char(letter: int) -> str:
    i = abs(letter)
    if not 1 <= i <= MAX_PARSE_RANK:
        raise RankError(f"letter index {i} has no character form (max {MAX_PARSE_RANK})")
    c = chr(ord("a") + i - 1)
    return c if letter > 0 else c.upper()


def letter_from_char(c: str) -> int:
    if len(c) == 1 and c.isascii() and c.isalpha():
        if c.islower():
            return ord(c) - ord("a") + 1
        return -(ord(c) - ord("A") + 1)
    raise WordSyntaxError(f"invalid letter {c!r}")


def _check_letters(letters: tuple[int, ...], rank: int) -> None:
    if rank < 2:
        raise RankError(f"rank must be at least 2, got {rank}")
    for v in letters:
        if v == 0 or abs(v) > rank:
            raise RankError(f"letter {v} out of range for rank {rank}")


@dataclass(frozen=True)
class Word:
    """A word over the rank-``rank`` alphabet, not necessarily reduced.

    >>> str(Word((1, 2, -1), 2))
    'abA'
    """

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self) -> None:
        _check_letters(self.letters, self.rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(letter_to_char(v) for v in self.letters)


@dataclass(frozen=True)
class CyclicWord:
    """A nonempty cyclically reduced word, read around a circle.

    Equality is positional; use :func:`canonical_rotation` to compare
    conjugacy classes.
    """

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self) -> None:
        _check_letters(self.letters, self.rank)
        if not self.letters:
            raise TrivialWordError("cyclic words are nonempty")
        k = len(self.letters)
        for i in range(k):
            if self.letters[(i + 1) % k] == -self.letters[i]:
                raise ValueError(f"not cyclically reduced at position {i}: {self.letters}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(letter_to_char(v) for v in self.letters)


def parse_word(text: str, rank: int) -> Word:
    """Parse ``text`` into the unreduced word it spells.

    >>> parse_word("abA", 2).letters
    (1, 2, -1)
    """
    return Word(tuple(letter_from_char(c) for c in text), rank)


def parse_cyclic_word(text: str, rank: int) -> CyclicWord:
    """Parse text that must already spell a cyclically reduced word."""
    return CyclicWord(tuple(letter_from_char(c) for c in text), rank)


def is_reduced(w: Word) -> bool:
    return all(w.letters[i + 1] != -w.letters[i] for i in range(len(w.letters) - 1))


def free_reduce(w: Word) -> Word:
    """The unique reduced word equal to ``w`` in the free group.

    >>> str(free_reduce(parse_word("abBA", 2)))
    ''
    """
    out: list[int] = []
    for v in w.letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return Word(tuple(out), w.rank)


def invert(w: Word) -> Word:
    return Word(tuple(-v for v in reversed(w.letters)), w.rank)


def concat(*ws: Word) -> Word:
    """Concatenation without reduction; ranks must agree."""
    if not ws:
        raise ValueError("concat needs at least one word")
    rank = ws[0].rank
    for w in ws:
        if w.rank != rank:
            raise RankError(f"mixed ranks {rank} and {w.rank}")
    return Word(tuple(v for w in ws for v in w.letters), rank)


def product(*ws: Word) -> Word:
    """Reduced product of the given words."""
    return free_reduce(concat(*ws))


def conjugate(w: Word, by: Word) -> Word:
    """Reduced form of ``by . w . by^-1``."""
    return product(by, w, invert(by))


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split ``w`` as ``conjugator . c . conjugator^-1`` with ``c`` cyclically reduced.

    Raises :class:`TrivialWordError` when ``w`` reduces to the identity.
    """
    r = free_reduce(w)
    if not r.letters:
        raise TrivialWordError("the trivial element has no cyclic word")
    letters = r.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return CyclicWord(letters[i:j], w.rank), Word(letters[:i], w.rank)


def canonical_rotation(c: CyclicWord) -> CyclicWord:
    """The lexicographically least rotation under the letter order.

    Two cyclic words represent the same conjugacy class exactly when
    their canonical rotations are identical sequences.
    """
    ls = c.letters
    k = len(ls)
    best = min(
        range(k),
        key=lambda r: tuple(letter_key(ls[(r + i) % k]) for i in range(k)),
    )
    return CyclicWord(ls[best:] + ls[:best], c.rank)


def conjugacy_class(w: Word) -> CyclicWord:
    """Canonical representative of the conjugacy class of ``w``."""
    return canonical_rotation(cyclic_reduce(w)[0])


def normalize_classes(words: Iterable[CyclicWord]) -> tuple[CyclicWord, ...]:
    """Canonical, sorted, duplicate-free tuple of conjugacy classes."""
    words = list(words)
    ranks = {c.rank for c in words}
    if len(ranks) > 1:
        raise RankError(f"mixed ranks {sorted(ranks)}")
    seen = {}
    for c in words:
        cc = canonical_rotation(c)
        seen[cc.letters] = cc
    return tuple(
        sorted(seen.values(), key=lambda c: (len(c), tuple(letter_key(v) for v in c.letters)))
    )
