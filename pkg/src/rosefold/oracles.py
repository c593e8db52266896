"""Independent generators and brute-force checkers.

Everything here exists to validate the fold-based machinery from the
outside: primitive classes produced as automorphic images of a generator,
separable sets produced from explicit free decompositions with replayable
witnesses, and an exhaustive label-preserving morphism search.  All
randomness is drawn from ``random.Random`` seeded explicitly, so every
generated corpus is reproducible byte for byte.

The Nielsen orbit is sound (every output is primitive by construction)
but not claimed complete below a length cap: a short primitive might only
be reachable through longer intermediate classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .folding import FoldSequence, subgroup_graph
from .graphs import (
    BasedGraph,
    Edge,
    GraphMorphism,
    LabeledGraph,
    closed_path_reading,
    is_rose,
    oriented_edge,
    wedge_of_words,
)
from .tameness import AlmostRose, SignedRelabeling, almost_rose, factor_through_almost_rose
from .words import (
    CyclicWord,
    RankError,
    TrivialWordError,
    Word,
    conjugacy_class,
    conjugate,
    cyclic_reduce,
    free_reduce,
    invert,
    is_reduced,
    parse_word,
)


class SearchLimitError(RuntimeError):
    """The brute-force search exceeded its configured state budget."""


# -- endomorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class EndomorphismSpec:
    """Images of the generators; an attached inverse makes it a witnessed
    automorphism."""

    rank: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise ValueError(f"need {self.rank} images, got {len(self.images)}")
        for w in self.images:
            if w.rank != self.rank:
                raise RankError(f"image rank {w.rank} differs from {self.rank}")
        if self.inverse_images is not None:
            if len(self.inverse_images) != self.rank:
                raise ValueError("inverse images must cover every generator")
            for w in self.inverse_images:
                if w.rank != self.rank:
                    raise RankError("inverse image rank mismatch")


def identity_endomorphism(n: int) -> EndomorphismSpec:
    gens = tuple(Word((i,), n) for i in range(1, n + 1))
    return EndomorphismSpec(n, gens, gens)


def apply_endomorphism(spec: EndomorphismSpec, w: Word) -> Word:
    if spec.rank != w.rank:
        raise RankError(f"word rank {w.rank} differs from spec rank {spec.rank}")
    letters: list[int] = []
    for v in w.letters:
        img = spec.images[abs(v) - 1]
        letters.extend(img.letters if v > 0 else invert(img).letters)
    return free_reduce(Word(tuple(letters), w.rank))


def inverse_spec(spec: EndomorphismSpec) -> EndomorphismSpec:
    if spec.inverse_images is None:
        raise ValueError("spec carries no inverse witness")
    return EndomorphismSpec(spec.rank, spec.inverse_images, spec.images)


def compose_endomorphisms(outer: EndomorphismSpec, inner: EndomorphismSpec) -> EndomorphismSpec:
    """The composite applying ``inner`` first, then ``outer``."""
    if outer.rank != inner.rank:
        raise RankError("cannot compose specs of different ranks")
    images = tuple(apply_endomorphism(outer, w) for w in inner.images)
    inverse = None
    if outer.inverse_images is not None and inner.inverse_images is not None:
        inv_outer = inverse_spec(outer)
        inv_inner = inverse_spec(inner)
        inverse = tuple(apply_endomorphism(inv_inner, w) for w in inv_outer.images)
    return EndomorphismSpec(outer.rank, images, inverse)


def is_verified_automorphism(spec: EndomorphismSpec) -> bool:
    """Both compositions with the stored inverse fix every generator."""
    if spec.inverse_images is None:
        return False
    n = spec.rank
    inv = inverse_spec(spec)
    for i in range(1, n + 1):
        x = Word((i,), n)
        if apply_endomorphism(spec, inv.images[i - 1]) != x:
            return False
        if apply_endomorphism(inv, spec.images[i - 1]) != x:
            return False
    return True


def nielsen_generators(n: int) -> list[EndomorphismSpec]:
    """Transpositions of generators, inversion of the first generator, and
    the transvection sending it to its product with the second; each spec
    carries its inverse."""
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")

    def gen(i: int) -> Word:
        return Word((i,), n)

    specs: list[EndomorphismSpec] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            images = tuple(
                gen(j) if t == i else gen(i) if t == j else gen(t) for t in range(1, n + 1)
            )
            specs.append(EndomorphismSpec(n, images, images))
    flip = tuple(Word((-1,), n) if t == 1 else gen(t) for t in range(1, n + 1))
    specs.append(EndomorphismSpec(n, flip, flip))
    trans = tuple(Word((1, 2), n) if t == 1 else gen(t) for t in range(1, n + 1))
    trans_inv = tuple(Word((1, -2), n) if t == 1 else gen(t) for t in range(1, n + 1))
    specs.append(EndomorphismSpec(n, trans, trans_inv))
    return specs


# -- primitive classes -------------------------------------------------------


@dataclass(frozen=True)
class PrimitiveOrbit:
    classes: frozenset[CyclicWord]
    complete: bool  # False when the application budget ran out


def primitive_orbit(n: int, max_len: int, budget: int = 2_000_000) -> PrimitiveOrbit:
    """Closure of the class of the first generator under the Nielsen
    generators and their inverses, pruned to cyclic length ``max_len``.

    Every output is primitive by construction.  When the budget runs out
    the result is flagged incomplete but remains all-primitive.
    """
    if max_len < 1:
        raise ValueError(f"max_len must be at least 1, got {max_len}")
    specs: list[EndomorphismSpec] = []
    for s in nielsen_generators(n):
        specs.append(s)
        inv = inverse_spec(s)
        if inv.images != s.images:
            specs.append(inv)
    start = conjugacy_class(Word((1,), n))
    seen: dict[tuple[int, ...], CyclicWord] = {start.letters: start}
    frontier = [start]
    applications = 0
    complete = True
    while frontier and complete:
        fresh: list[CyclicWord] = []
        for c in frontier:
            rep = Word(c.letters, n)
            for spec in specs:
                if applications >= budget:
                    complete = False
                    break
                applications += 1
                cls = conjugacy_class(apply_endomorphism(spec, rep))
                if len(cls) <= max_len and cls.letters not in seen:
                    seen[cls.letters] = cls
                    fresh.append(cls)
            if not complete:
                break
        frontier = fresh
    return PrimitiveOrbit(frozenset(seen.values()), complete)


# -- separable sets ----------------------------------------------------------


@dataclass(frozen=True)
class SeparableWitness:
    """Replayable witness that every produced class is conjugate into one
    factor of an explicit free decomposition."""

    rank: int
    split: int  # the first factor is generated by letters 1..split
    automorphism: EndomorphismSpec
    factor_sides: tuple[int, ...]
    factor_words: tuple[Word, ...]
    conjugators: tuple[Word, ...]


def _random_reduced_word(rng: random.Random, rank: int, letters: list[int], length: int) -> Word:
    out: list[int] = []
    for _ in range(length):
        options = [v for x in letters for v in (x, -x) if not out or v != -out[-1]]
        out.append(rng.choice(options))
    return Word(tuple(out), rank)


def _random_nielsen_composite(
    rng: random.Random, n: int, max_moves: int
) -> EndomorphismSpec:
    gens = nielsen_generators(n)
    spec = identity_endomorphism(n)
    for _ in range(rng.randint(0, max_moves)):
        move = gens[rng.randrange(len(gens))]
        if rng.random() < 0.5:
            move = inverse_spec(move)
        spec = compose_endomorphisms(move, spec)
    return spec


def random_separable_set(
    n: int, seed: int, count: int, max_len: int = 10
) -> tuple[tuple[CyclicWord, ...], SeparableWitness]:
    """Deterministically draw ``count`` distinct classes, each conjugate
    into one factor of a random free decomposition twisted by a random
    automorphism."""
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    if max_len < 2:
        raise ValueError(f"max_len must be at least 2, got {max_len}")
    rng = random.Random(seed)
    m = rng.randint(1, n - 1)
    headroom = max(1, max_len // 3)
    while True:
        phi = _random_nielsen_composite(rng, n, max_moves=4)
        short = [len(conjugacy_class(w)) <= headroom for w in phi.images]
        if any(short[:m]) and any(short[m:]):
            break
    classes: list[CyclicWord] = []
    sides: list[int] = []
    words: list[Word] = []
    conjs: list[Word] = []
    attempts = 0
    while len(classes) < count:
        attempts += 1
        if attempts > 2000 * count:
            raise RuntimeError("could not draw enough distinct classes under the length cap")
        side = rng.choice((1, 2))
        letters = list(range(1, m + 1)) if side == 1 else list(range(m + 1, n + 1))
        u = _random_reduced_word(rng, n, letters, rng.randint(1, max(1, max_len // 2)))
        conj = _random_reduced_word(rng, n, list(range(1, n + 1)), rng.randint(0, 3))
        element = conjugate(apply_endomorphism(phi, u), conj)
        cls = conjugacy_class(element)
        if len(cls) > max_len or cls in classes:
            continue
        classes.append(cls)
        sides.append(side)
        words.append(u)
        conjs.append(conj)
    witness = SeparableWitness(
        rank=n,
        split=m,
        automorphism=phi,
        factor_sides=tuple(sides),
        factor_words=tuple(words),
        conjugators=tuple(conjs),
    )
    return tuple(classes), witness


def verify_separable_witness(classes: tuple[CyclicWord, ...], witness: SeparableWitness) -> bool:
    """Replay the witness: every class must equal the class of
    conjugator . phi(factor word) . conjugator^-1."""
    n, m = witness.rank, witness.split
    if not 1 <= m < n:
        return False
    if not is_verified_automorphism(witness.automorphism):
        return False
    if not (
        len(classes) == len(witness.factor_sides) == len(witness.factor_words) == len(witness.conjugators)
    ):
        return False
    for cls, side, u, conj in zip(
        classes, witness.factor_sides, witness.factor_words, witness.conjugators
    ):
        if side not in (1, 2) or len(u) == 0 or not is_reduced(u):
            return False
        allowed = set(range(1, m + 1)) if side == 1 else set(range(m + 1, n + 1))
        if any(abs(v) not in allowed for v in u.letters):
            return False
        element = conjugate(apply_endomorphism(witness.automorphism, u), conj)
        try:
            if conjugacy_class(element) != conjugacy_class(Word(cls.letters, n)):
                return False
        except TrivialWordError:
            return False
    return True


# -- exhaustive morphism search ----------------------------------------------


def brute_force_morphism(
    g: LabeledGraph, h: LabeledGraph, max_states: int = 10_000_000
) -> GraphMorphism | None:
    """Complete backtracking search for a label-preserving morphism.

    Returns the first morphism in deterministic order, or None; raises
    :class:`SearchLimitError` past ``max_states`` visited assignments.
    """
    if g.rank != h.rank:
        raise RankError(f"rank mismatch: {g.rank} vs {h.rank}")
    gverts = sorted(g.vertices)
    hverts = sorted(h.vertices)
    h_index: dict[tuple[int, int, int], list[int]] = {}
    for e in h.edges:
        h_index.setdefault((e.origin, e.terminus, e.label), []).append(e.eid)
    for eids in h_index.values():
        eids.sort()
    incident: dict[int, list[Edge]] = {v: [] for v in gverts}
    for e in g.edges:
        incident[e.origin].append(e)
        if e.terminus != e.origin:
            incident[e.terminus].append(e)
    assignment: dict[int, int] = {}
    visited = 0

    def consistent(v: int) -> bool:
        for e in incident[v]:
            fo = assignment.get(e.origin)
            ft = assignment.get(e.terminus)
            if fo is None or ft is None:
                continue
            if (fo, ft, e.label) not in h_index:
                return False
        return True

    def extend(i: int) -> bool:
        nonlocal visited
        if i == len(gverts):
            return True
        v = gverts[i]
        for w in hverts:
            visited += 1
            if visited > max_states:
                raise SearchLimitError(f"exceeded {max_states} partial assignments")
            assignment[v] = w
            if consistent(v) and extend(i + 1):
                return True
            del assignment[v]
        return False

    if not extend(0):
        return None
    emap = {
        e.eid: h_index[(assignment[e.origin], assignment[e.terminus], e.label)][0]
        for e in g.edges
    }
    return GraphMorphism(vertex_map=dict(assignment), edge_map=emap)


# -- constructive pipelines ----------------------------------------------------


@dataclass(frozen=True)
class ReadingProof:
    """A closed path in a graph spelling a cyclic word."""

    cyclic: CyclicWord
    start: int
    path: tuple[int, ...]


def rose_for_basis(basis: EndomorphismSpec) -> tuple[AlmostRose, FoldSequence, ReadingProof]:
    """Fold the wedge of circles spelling a verified basis into an
    almost-rose that reads the first basis word.

    The first word must be cyclically reduced of length at least two; a
    single letter is rejected since it is readable in suitable
    almost-roses without any folding.
    """
    if not is_verified_automorphism(basis):
        raise ValueError("basis is not a verified automorphism")
    n = basis.rank
    w1 = basis.images[0]
    for w in basis.images:
        if len(w) == 0 or not is_reduced(w):
            raise ValueError(f"basis words must be reduced and nonempty: {w!s}")
    if len(w1) < 2:
        raise ValueError("first basis word must have length at least 2; single letters are trivially readable")
    cyc, conj = cyclic_reduce(w1)
    if len(conj) != 0:
        raise ValueError(f"first basis word must be cyclically reduced, got {w1!s}")
    wedge = wedge_of_words(basis.images, n)
    rose, seq = factor_through_almost_rose(wedge.graph)
    found = closed_path_reading(rose.graph, cyc)
    if found is None:
        raise RuntimeError("internal error: first basis word unreadable in the almost-rose")
    start, path = found
    return rose, seq, ReadingProof(cyc, start, path)


def _wedge_at_basepoints(a: BasedGraph, b: BasedGraph) -> BasedGraph:
    """Disjoint union with the two basepoints identified (into ``a``'s)."""
    v_off = max(a.graph.vertices) + 1
    e_off = max((e.eid for e in a.graph.edges), default=0)

    def mv(v: int) -> int:
        return a.basepoint if v == b.basepoint else v + v_off

    vertices = set(a.graph.vertices) | {mv(v) for v in b.graph.vertices}
    edges = list(a.graph.edges) + [
        Edge(e.eid + e_off, mv(e.origin), mv(e.terminus), e.label) for e in b.graph.edges
    ]
    return BasedGraph(LabeledGraph(a.graph.rank, frozenset(vertices), tuple(edges)), a.basepoint)


def rose_for_separable(
    witness: SeparableWitness, classes: tuple[CyclicWord, ...]
) -> tuple[AlmostRose, tuple[ReadingProof, ...]]:
    """An almost-rose reading every class of a witnessed separable set.

    Builds the folded based graph of each (twisted) factor, conjugates
    both factors by single letters until the wedge point sees two distinct
    incoming labels, wedges them, and either assembles the two-sided
    almost-rose directly (when the wedge is the rose) or factors the fold
    sequence through one.
    """
    if not verify_separable_witness(classes, witness):
        raise ValueError("separable witness does not validate the classes")
    n, m = witness.rank, witness.split
    phi = witness.automorphism
    gens1 = [apply_endomorphism(phi, Word((i,), n)) for i in range(1, m + 1)]
    gens2 = [apply_endomorphism(phi, Word((i,), n)) for i in range(m + 1, n + 1)]
    while True:
        g1 = subgroup_graph(tuple(gens1), n)
        g2 = subgroup_graph(tuple(gens2), n)
        seen = g1.graph.in_labels(g1.basepoint) | g2.graph.in_labels(g2.basepoint)
        if len(seen) >= 2:
            break
        # every subgroup element reads z^-1 . w . z; conjugating by z strips
        # the common layer and shortens every generator by two letters
        (z,) = seen
        shift = Word((z,), n)
        gens1 = [conjugate(w, shift) for w in gens1]
        gens2 = [conjugate(w, shift) for w in gens2]
    wedge = _wedge_at_basepoints(g1, g2)
    if is_rose(wedge.graph):
        letters1 = sorted(e.label for e in g1.graph.edges)
        letters2 = sorted(e.label for e in g2.graph.edges)
        y = letters1[0]
        targets = [y] + [x for x in letters1 if x != y] + letters2
        rose = almost_rose(n, len(letters1), len(letters1), SignedRelabeling(tuple(targets)))
    else:
        rose, _ = factor_through_almost_rose(wedge.graph)
    proofs = []
    for c in classes:
        found = closed_path_reading(rose.graph, c)
        if found is None:
            raise RuntimeError(f"internal error: class {c!s} unreadable in the almost-rose")
        start, path = found
        proofs.append(ReadingProof(c, start, path))
    return rose, tuple(proofs)


# -- random corpora ------------------------------------------------------------


def random_labeled_graph(
    rng: random.Random, rank: int, max_vertices: int = 6, max_edge_pairs: int = 10
) -> LabeledGraph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(0, max_edge_pairs)
    edges = tuple(
        oriented_edge(i, rng.randrange(nv), rng.randrange(nv), rng.randint(1, rank))
        for i in range(1, ne + 1)
    )
    return LabeledGraph(rank, frozenset(range(nv)), edges)


def random_class(rng: random.Random, rank: int, max_len: int) -> CyclicWord:
    while True:
        letters = list(range(1, rank + 1))
        w = _random_reduced_word(rng, rank, letters, rng.randint(1, max_len))
        try:
            cls = conjugacy_class(w)
        except TrivialWordError:
            continue
        if len(cls) <= max_len:
            return cls


def random_basis(rng: random.Random, n: int, max_moves: int = 6) -> EndomorphismSpec:
    """A verified basis whose first word is cyclically reduced of length >= 2."""
    while True:
        spec = _random_nielsen_composite(rng, n, max_moves)
        w1 = spec.images[0]
        if len(w1) < 2:
            continue
        cyc, conj = cyclic_reduce(w1)
        if len(conj) == 0:
            return spec


# -- witness files --------------------------------------------------------------


def _word_token(w: Word) -> str:
    return str(w) if len(w) else "-"


def _parse_word_token(token: str, rank: int) -> Word:
    return Word((), rank) if token == "-" else parse_word(token, rank)


def endomorphism_to_text(spec: EndomorphismSpec) -> str:
    lines = ["basis-witness", f"rank {spec.rank}"]
    for i, w in enumerate(spec.images, start=1):
        lines.append(f"image {i} -> {_word_token(w)}")
    if spec.inverse_images is not None:
        for i, w in enumerate(spec.inverse_images, start=1):
            lines.append(f"inverse {i} -> {_word_token(w)}")
    return "\n".join(lines) + "\n"


def parse_endomorphism_text(text: str) -> EndomorphismSpec:
    rank: int | None = None
    images: dict[int, Word] = {}
    inverses: dict[int, Word] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line == "basis-witness":
            continue
        parts = line.split()
        if parts[0] == "rank" and len(parts) == 2:
            rank = int(parts[1])
        elif parts[0] in ("image", "inverse") and len(parts) == 4 and parts[2] == "->":
            if rank is None:
                raise ValueError("witness text must declare rank before images")
            target = images if parts[0] == "image" else inverses
            target[int(parts[1])] = _parse_word_token(parts[3], rank)
        else:
            raise ValueError(f"unrecognized witness line: {raw!r}")
    if rank is None or sorted(images) != list(range(1, rank + 1)):
        raise ValueError("witness text must give one image per generator")
    inv = None
    if inverses:
        if sorted(inverses) != list(range(1, rank + 1)):
            raise ValueError("witness text must give one inverse image per generator")
        inv = tuple(inverses[i] for i in range(1, rank + 1))
    return EndomorphismSpec(rank, tuple(images[i] for i in range(1, rank + 1)), inv)


def separable_witness_to_text(witness: SeparableWitness) -> str:
    lines = ["separable-witness", f"rank {witness.rank}", f"split {witness.split}"]
    for i, w in enumerate(witness.automorphism.images, start=1):
        lines.append(f"image {i} -> {_word_token(w)}")
    assert witness.automorphism.inverse_images is not None
    for i, w in enumerate(witness.automorphism.inverse_images, start=1):
        lines.append(f"inverse {i} -> {_word_token(w)}")
    for j in range(len(witness.factor_words)):
        lines.append(f"factor {j + 1} -> {witness.factor_sides[j]}")
        lines.append(f"word {j + 1} -> {_word_token(witness.factor_words[j])}")
        lines.append(f"conj {j + 1} -> {_word_token(witness.conjugators[j])}")
    return "\n".join(lines) + "\n"
