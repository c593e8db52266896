"""Almost-roses and the certified tameness decision.

An *almost-rose* is a core graph of Betti number n that folds onto the
rank-n rose with a single fold.  Such a graph has two vertices u, v and
n+1 edge pairs, and up to permuting/inverting letters it is the standard
graph ``standard_almost_rose(n, k, l)``: a loop at u and an edge u->v
both labeled by letter 1, loops at u labeled 2..k, edges u->v labeled
k+1..l, and loops at v labeled l+1..n.

A set of conjugacy classes is *tame* when a single almost-rose reads all
of them.  This is decidable via the Whitehead graph: the set is tame
exactly when its Whitehead graph is disconnected or has a cut vertex.
``decide_tame`` returns a certificate for either outcome that
``verify_certificate`` can re-check from scratch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .folding import FoldSequence, fold_to_completion, foldable_pairs
from .graphs import (
    Edge,
    GraphMorphism,
    LabeledGraph,
    NotConnectedError,
    betti,
    core,
    disjoint_circuits,
    graph_to_text,
    is_connected,
    is_label_isomorphic,
    is_rose,
    oriented_edge,
    reads_cyclic_word,
    verify_morphism,
)
from .whitehead import (
    WhiteheadGraph,
    components,
    cut_vertices,
    is_subgraph,
    whitehead_of_classes,
    whitehead_of_graph,
)
from .words import CyclicWord, RankError, Word, letter_key, letter_to_char, normalize_classes


class FoldFactorError(RuntimeError):
    """The fold sequence failed to pass through an almost-rose."""


@dataclass(frozen=True)
class SignedRelabeling:
    """A permutation of the generators combined with a sign per letter.

    ``targets[i-1]`` is the (signed) image of generator ``i``; inverses
    map to inverses, so the action commutes with inversion.
    """

    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.targets)
        if n < 2:
            raise RankError(f"rank must be at least 2, got {n}")
        if sorted(abs(t) for t in self.targets) != list(range(1, n + 1)):
            raise ValueError(f"targets are not a signed permutation: {self.targets}")

    @classmethod
    def identity(cls, n: int) -> "SignedRelabeling":
        return cls(tuple(range(1, n + 1)))

    @property
    def rank(self) -> int:
        return len(self.targets)

    def is_identity(self) -> bool:
        return self.targets == tuple(range(1, self.rank + 1))

    def apply_letter(self, v: int) -> int:
        t = self.targets[abs(v) - 1]
        return t if v > 0 else -t

    def apply_word(self, w: Word) -> Word:
        if w.rank != self.rank:
            raise RankError(f"word rank {w.rank} differs from relabeling rank {self.rank}")
        return Word(tuple(self.apply_letter(v) for v in w.letters), w.rank)

    def apply_cyclic(self, c: CyclicWord) -> CyclicWord:
        if c.rank != self.rank:
            raise RankError(f"class rank {c.rank} differs from relabeling rank {self.rank}")
        return CyclicWord(tuple(self.apply_letter(v) for v in c.letters), c.rank)

    def apply_graph(self, g: LabeledGraph) -> LabeledGraph:
        if g.rank != self.rank:
            raise RankError(f"graph rank {g.rank} differs from relabeling rank {self.rank}")
        edges = tuple(
            oriented_edge(e.eid, e.origin, e.terminus, self.apply_letter(e.label))
            for e in g.edges
        )
        return LabeledGraph(g.rank, g.vertices, edges)

    def apply_whitehead(self, w: WhiteheadGraph) -> WhiteheadGraph:
        edges = frozenset(
            frozenset(self.apply_letter(v) for v in edge) for edge in w.edges
        )
        return WhiteheadGraph(w.rank, edges)

    def inverse(self) -> "SignedRelabeling":
        inv = [0] * self.rank
        for i, t in enumerate(self.targets, start=1):
            inv[abs(t) - 1] = i if t > 0 else -i
        return SignedRelabeling(tuple(inv))

    def compose(self, other: "SignedRelabeling") -> "SignedRelabeling":
        """The relabeling acting as self-after-other."""
        if other.rank != self.rank:
            raise RankError("cannot compose relabelings of different ranks")
        return SignedRelabeling(tuple(self.apply_letter(t) for t in other.targets))


def _check_shape(n: int, k: int, l: int) -> None:
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    if not (1 <= k <= l <= n and k < n):
        raise ValueError(f"need 1 <= k <= l <= n and k < n, got k={k} l={l} n={n}")


def _standard_graph(n: int, k: int, l: int) -> LabeledGraph:
    """The standard two-vertex almost-rose graph, vertices u=0 and v=1.

    Edge ids: 1 is the letter-1 loop at u, 2 the letter-1 edge u->v, and
    the unique edge pair labeled j>1 has id j+1.
    """
    _check_shape(n, k, l)
    edges = [Edge(1, 0, 0, 1), Edge(2, 0, 1, 1)]
    for j in range(2, k + 1):
        edges.append(Edge(j + 1, 0, 0, j))
    for j in range(k + 1, l + 1):
        edges.append(Edge(j + 1, 0, 1, j))
    for j in range(l + 1, n + 1):
        edges.append(Edge(j + 1, 1, 1, j))
    return LabeledGraph(n, frozenset({0, 1}), tuple(edges))


@dataclass(frozen=True)
class AlmostRose:
    rank: int
    k: int
    l: int
    relabeling: SignedRelabeling
    graph: LabeledGraph

    def __post_init__(self) -> None:
        _check_shape(self.rank, self.k, self.l)
        if self.relabeling.rank != self.rank:
            raise RankError("relabeling rank differs from almost-rose rank")
        expected = self.relabeling.apply_graph(_standard_graph(self.rank, self.k, self.l))
        if self.graph != expected:
            raise ValueError("graph is not the relabeled standard almost-rose")


def almost_rose(n: int, k: int, l: int, relabeling: SignedRelabeling | None = None) -> AlmostRose:
    if relabeling is None:
        relabeling = SignedRelabeling.identity(n)
    return AlmostRose(n, k, l, relabeling, relabeling.apply_graph(_standard_graph(n, k, l)))


def standard_almost_rose(n: int, k: int, l: int) -> AlmostRose:
    """The almost-rose with the identity relabeling."""
    return almost_rose(n, k, l)


def clique_sides(n: int, k: int, l: int) -> tuple[frozenset[int], frozenset[int]]:
    """The two letter sets whose complete graphs, wedged at letter 1, form
    the Whitehead graph of the standard almost-rose."""
    _check_shape(n, k, l)
    side1 = {s * i for i in range(1, k + 1) for s in (1, -1)}
    side1 |= {-i for i in range(k + 1, l + 1)}
    side2 = {1} | set(range(k + 1, l + 1))
    side2 |= {s * i for i in range(l + 1, n + 1) for s in (1, -1)}
    return frozenset(side1), frozenset(side2)


def whitehead_of_almost_rose(rose: AlmostRose) -> WhiteheadGraph:
    """Closed form: the wedge at the image of letter 1 of the complete
    graphs on the two relabeled clique sides."""
    v1, v2 = clique_sides(rose.rank, rose.k, rose.l)
    f = rose.relabeling.apply_letter
    edges: set[frozenset[int]] = set()
    for side in (v1, v2):
        letters = [f(v) for v in side]
        for x, y in itertools.combinations(letters, 2):
            edges.add(frozenset((x, y)))
    return WhiteheadGraph(rose.rank, frozenset(edges))


def recognize_almost_rose(g: LabeledGraph) -> AlmostRose | None:
    """Identify ``g`` as a relabeled standard almost-rose, if it is one.

    The carrier vertex u is the one incident to the unique foldable pair;
    anything violating the classification (wrong counts, repeated letters,
    no unique loop/non-loop fold) is reported as non-recognition.
    """
    n = g.rank
    if len(g.vertices) != 2 or len(g.edges) != n + 1:
        return None
    if not is_connected(g):
        return None
    if any(g.valence(v) < 2 for v in g.vertices):
        return None
    pairs = foldable_pairs(g)
    if len(pairs) != 1:
        return None
    d1, d2 = pairs[0]
    edge_map = g.edge_map()
    is_loop = [edge_map[abs(d)].origin == edge_map[abs(d)].terminus for d in (d1, d2)]
    if sum(is_loop) != 1:
        return None
    u = g.dir_origin(d1)
    y = g.dir_label(d1)
    v = next(x for x in g.vertices if x != u)
    loops_u: list[int] = []
    loops_v: list[int] = []
    connectors: list[int] = []
    special = {abs(d1), abs(d2)}
    for e in g.edges:
        if e.eid in special:
            continue
        if e.origin == e.terminus == u:
            loops_u.append(e.label)
        elif e.origin == e.terminus == v:
            loops_v.append(e.label)
        else:
            connectors.append(e.label if e.origin == u else -e.label)
    unsigned = [abs(y)] + loops_u + [abs(z) for z in connectors] + loops_v
    if sorted(unsigned) != list(range(1, n + 1)):
        return None
    k = 1 + len(loops_u)
    l = k + len(connectors)
    targets = [y] + sorted(loops_u) + sorted(connectors, key=abs) + sorted(loops_v)
    rose = almost_rose(n, k, l, SignedRelabeling(tuple(targets)))
    if not is_label_isomorphic(rose.graph, g):
        return None
    return rose


def enumerate_almost_roses(n: int) -> list[AlmostRose]:
    """All almost-roses of rank ``n`` up to label isomorphism, deterministically."""
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    signed_letters = sorted(
        (s * i for i in range(1, n + 1) for s in (1, -1)), key=letter_key
    )
    roses: list[AlmostRose] = []
    for k in range(1, n):
        for l in range(k, n + 1):
            n_loops_u, n_conn = k - 1, l - k
            for y in signed_letters:
                rest = [i for i in range(1, n + 1) if i != abs(y)]
                for loops_u in itertools.combinations(rest, n_loops_u):
                    left = [i for i in rest if i not in loops_u]
                    for conn in itertools.combinations(left, n_conn):
                        loops_v = [i for i in left if i not in conn]
                        for signs in itertools.product((1, -1), repeat=n_conn):
                            targets = (
                                [y]
                                + list(loops_u)
                                + [s * i for s, i in zip(signs, conn)]
                                + loops_v
                            )
                            rose = almost_rose(n, k, l, SignedRelabeling(tuple(targets)))
                            if not any(
                                is_label_isomorphic(rose.graph, r.graph) for r in roses
                            ):
                                roses.append(rose)
    return roses


def induced_morphism(g: LabeledGraph, rose: AlmostRose) -> GraphMorphism | None:
    """The label-preserving morphism into the almost-rose induced by the
    Whitehead inclusion, or None when the inclusion fails.

    Working in standard coordinates (the relabeling undone), an edge
    labeled j != 1 maps to the unique edge pair with that label.  An edge
    labeled 1 maps to the connecting edge when its terminal vertex also
    receives some label from the second clique side, and to the loop at u
    otherwise; the vertex map follows the same dichotomy.
    """
    if not is_subgraph(whitehead_of_graph(g), whitehead_of_almost_rose(rose)):
        return None
    gs = rose.relabeling.inverse().apply_graph(g)
    n, k, l = rose.rank, rose.k, rose.l
    _, v2 = clique_sides(n, k, l)
    v2_strict = set(v2) - {1}
    vmap = {p: (1 if gs.in_labels(p) & v2_strict else 0) for p in gs.vertices}
    emap: dict[int, int] = {}
    for e in gs.edges:
        if e.label != 1:
            emap[e.eid] = e.label + 1
        else:
            emap[e.eid] = 2 if vmap[e.terminus] == 1 else 1
    m = GraphMorphism(vertex_map=vmap, edge_map=emap)
    if not verify_morphism(m, g, rose.graph):
        raise RuntimeError(
            "internal error: induced morphism failed verification despite inclusion"
        )
    return m


def _subgraph_components(adj: dict[int, set[int]]) -> list[frozenset[int]]:
    comps: list[frozenset[int]] = []
    seen: set[int] = set()
    for v in sorted(adj, key=letter_key):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def build_rose_from_whitehead(w: WhiteheadGraph) -> AlmostRose | None:
    """An almost-rose whose Whitehead graph contains ``w``.

    Requires ``w`` disconnected or with a cut vertex, else returns None.
    The wedge letter becomes letter 1; the component of its inverse in the
    punctured graph goes to the first clique side and everything else to
    the second, letters split across the sides becoming connecting edges
    (inverted when the forbidden orientation lands on side one).
    """
    n = w.rank
    adj = w.adjacency()
    letters = w.letters()
    cuts = sorted(cut_vertices(w), key=letter_key)
    candidates = cuts + [v for v in letters if v not in cuts]
    for c in candidates:
        sub_adj = {v: adj[v] - {c} for v in letters if v != c}
        comps = _subgraph_components(sub_adj)
        side1 = next(comp for comp in comps if -c in comp)
        side2 = {v for v in letters if v != c} - side1
        if not side2:
            continue
        wholly1: list[int] = []
        split_targets: list[int] = []
        wholly2: list[int] = []
        for j in range(1, n + 1):
            if j == abs(c):
                continue
            in1 = {s * j for s in (1, -1)} & side1
            if len(in1) == 2:
                wholly1.append(j)
            elif len(in1) == 0:
                wholly2.append(j)
            else:
                (kept,) = {s * j for s in (1, -1)} - in1
                split_targets.append(kept)  # the member on side two
        k = 1 + len(wholly1)
        l = k + len(split_targets)
        targets = [c] + sorted(wholly1) + sorted(split_targets, key=abs) + sorted(wholly2)
        rose = almost_rose(n, k, l, SignedRelabeling(tuple(targets)))
        if not is_subgraph(w, whitehead_of_almost_rose(rose)):
            raise RuntimeError("internal error: built almost-rose misses Whitehead edges")
        return rose
    return None


def factor_through_almost_rose(g: LabeledGraph) -> tuple[AlmostRose, FoldSequence]:
    """Fold to completion and return the penultimate snapshot as an
    almost-rose together with the full sequence.

    Requires ``g`` connected, core, of full Betti number, mapping onto the
    whole free group, and not the rose itself.  A Betti-dropping step or a
    penultimate snapshot that fails recognition raises
    :class:`FoldFactorError`, which signals that the input did not satisfy
    the preconditions (dropping Betti contradicts surjectivity at full
    Betti number).
    """
    n = g.rank
    if not is_connected(g):
        raise NotConnectedError("factoring requires a connected graph")
    if core(g) != g:
        raise ValueError("factoring requires a core graph")
    if betti(g) != n:
        raise ValueError(f"factoring requires Betti number {n}, got {betti(g)}")
    if is_rose(g):
        raise ValueError("the rose itself admits no intermediate almost-rose")
    seq = fold_to_completion(g)
    if not is_rose(seq.final):
        raise ValueError("graph does not map onto the whole free group")
    for step in seq.steps:
        if step.betti_dropped:
            raise FoldFactorError(
                "a fold dropped the Betti number; the graph was not surjective at full rank"
            )
    penultimate = seq.snapshots[-2]
    rose = recognize_almost_rose(penultimate)
    if rose is None:
        raise FoldFactorError(
            "penultimate fold snapshot is not an almost-rose; core-ness was lost en route"
        )
    return rose, seq


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class TamenessCertificate:
    tame: bool
    rank: int
    classes: tuple[CyclicWord, ...]
    rose: AlmostRose | None = None
    morphism: GraphMorphism | None = None
    whitehead_edges: tuple[tuple[int, int], ...] | None = None
    spanning_tree: tuple[tuple[int, int], ...] | None = None
    non_cut_witness: tuple[tuple[int, tuple[tuple[int, int], ...]], ...] | None = None


def _bfs_tree(adj: dict[int, set[int]], vertices: list[int]) -> tuple[tuple[int, int], ...]:
    """Deterministic spanning tree edges of a connected vertex set."""
    root = vertices[0]
    seen = {root}
    queue = [root]
    edges: list[tuple[int, int]] = []
    while queue:
        u = queue.pop(0)
        for x in sorted(adj[u], key=letter_key):
            if x not in seen:
                seen.add(x)
                queue.append(x)
                a, b = sorted((u, x), key=letter_key)
                edges.append((a, b))
    return tuple(sorted(edges, key=lambda p: (letter_key(p[0]), letter_key(p[1]))))


def _is_spanning_tree(
    tree: tuple[tuple[int, int], ...],
    vertices: set[int],
    allowed: frozenset[frozenset[int]],
) -> bool:
    if len(tree) != len(vertices) - 1:
        return False
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in tree:
        if u not in vertices or v not in vertices or frozenset((u, v)) not in allowed:
            return False
        adj[u].add(v)
        adj[v].add(u)
    if not vertices:
        return True
    seen: set[int] = set()
    stack = [next(iter(vertices))]
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        stack.extend(adj[u] - seen)
    return seen == vertices


def decide_tame(classes, rank: int | None = None) -> TamenessCertificate:
    """Decide tameness of a set of conjugacy classes with a checkable
    certificate for either verdict."""
    norm = normalize_classes(list(classes))
    if rank is None:
        if not norm:
            raise ValueError("empty class set needs an explicit rank")
        rank = norm[0].rank
    elif norm and norm[0].rank != rank:
        raise RankError(f"classes have rank {norm[0].rank}, expected {rank}")
    w = whitehead_of_classes(norm, rank)
    comps = components(w)
    cuts = cut_vertices(w)
    if len(comps) > 1 or cuts:
        rose = build_rose_from_whitehead(w)
        if rose is None:
            raise RuntimeError("internal error: tame criterion held but no rose built")
        gamma = disjoint_circuits(norm, rank)
        morphism = induced_morphism(gamma, rose)
        if morphism is None:
            raise RuntimeError("internal error: Whitehead inclusion failed for built rose")
        return TamenessCertificate(
            tame=True, rank=rank, classes=norm, rose=rose, morphism=morphism
        )
    adj = w.adjacency()
    letters = w.letters()
    spanning = _bfs_tree(adj, letters)
    witness = []
    for v in letters:
        sub_adj = {x: adj[x] - {v} for x in letters if x != v}
        witness.append((v, _bfs_tree(sub_adj, [x for x in letters if x != v])))
    return TamenessCertificate(
        tame=False,
        rank=rank,
        classes=norm,
        whitehead_edges=tuple(w.sorted_edges()),
        spanning_tree=spanning,
        non_cut_witness=tuple(witness),
    )


def verify_certificate(classes, cert: TamenessCertificate, rank: int | None = None) -> bool:
    """Re-check a certificate from scratch; False on any discrepancy."""
    try:
        norm = normalize_classes(list(classes))
    except (ValueError, RankError):
        return False
    if rank is None:
        rank = cert.rank
    if cert.rank != rank or cert.classes != norm:
        return False
    if norm and norm[0].rank != rank:
        return False
    if cert.tame:
        if cert.rose is None or cert.morphism is None:
            return False
        if recognize_almost_rose(cert.rose.graph) is None:
            return False
        gamma = disjoint_circuits(norm, rank)
        if not verify_morphism(cert.morphism, gamma, cert.rose.graph):
            return False
        return all(reads_cyclic_word(cert.rose.graph, c) for c in norm)
    if (
        cert.whitehead_edges is None
        or cert.spanning_tree is None
        or cert.non_cut_witness is None
    ):
        return False
    w = whitehead_of_classes(norm, rank)
    if tuple(w.sorted_edges()) != cert.whitehead_edges:
        return False
    letters = w.letters()
    if not _is_spanning_tree(cert.spanning_tree, set(letters), w.edges):
        return False
    if [v for v, _ in cert.non_cut_witness] != letters:
        return False
    for v, tree in cert.non_cut_witness:
        rest = set(letters) - {v}
        if any(v in pair for pair in tree):
            return False
        if not _is_spanning_tree(tree, rest, w.edges):
            return False
    return True


def _edge_token(pair: tuple[int, int]) -> str:
    return f"{letter_to_char(pair[0])}-{letter_to_char(pair[1])}"


def certificate_to_text(cert: TamenessCertificate) -> str:
    lines = [
        "tameness-certificate",
        f"rank: {cert.rank}",
        "words: " + " ".join(str(c) for c in cert.classes),
        f"verdict: {'tame' if cert.tame else 'not-tame'}",
    ]
    if cert.tame:
        assert cert.rose is not None and cert.morphism is not None
        lines.append(f"rose: k={cert.rose.k} l={cert.rose.l}")
        for i, t in enumerate(cert.rose.relabeling.targets, start=1):
            lines.append(f"relabel {i} -> {t}")
        lines.append("rose-graph:")
        lines.append(graph_to_text(cert.rose.graph).rstrip("\n"))
        lines.append("end-graph")
        for v in sorted(cert.morphism.vertex_map):
            lines.append(f"vmap {v} -> {cert.morphism.vertex_map[v]}")
        for e in sorted(cert.morphism.edge_map):
            lines.append(f"emap {e} -> {cert.morphism.edge_map[e]}")
    else:
        assert cert.whitehead_edges is not None
        assert cert.spanning_tree is not None and cert.non_cut_witness is not None
        for pair in cert.whitehead_edges:
            lines.append(f"wh-edge {_edge_token(pair)}")
        lines.append("spanning-tree " + " ".join(_edge_token(p) for p in cert.spanning_tree))
        for v, tree in cert.non_cut_witness:
            lines.append(
                f"witness-tree {letter_to_char(v)}: " + " ".join(_edge_token(p) for p in tree)
            )
    return "\n".join(lines) + "\n"
