"""Letter-labeled directed graphs with inverse edges.

Each edge pair is stored once, oriented so that its label is a positive
letter.  A *directed edge* is a signed edge id: ``+eid`` traverses the
stored orientation and reads the stored label, ``-eid`` traverses the
reverse and reads the inverse letter.  The involution is therefore
implicit and can never disagree with the labeling.

Graphs are immutable values; every operation builds a new graph.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .words import (
    CyclicWord,
    RankError,
    Word,
    is_reduced,
    letter_from_char,
    letter_to_char,
    normalize_classes,
)


class NotConnectedError(ValueError):
    """The operation requires a connected graph."""


@dataclass(frozen=True)
class Edge:
    eid: int
    origin: int
    terminus: int
    label: int  # always positive

    def __post_init__(self) -> None:
        if self.eid <= 0:
            raise ValueError(f"edge id must be positive, got {self.eid}")
        if self.label <= 0:
            raise ValueError(f"stored edge label must be positive, got {self.label}")


def oriented_edge(eid: int, origin: int, terminus: int, label: int) -> Edge:
    """Build an edge from either orientation, normalizing to a positive label."""
    if label > 0:
        return Edge(eid, origin, terminus, label)
    return Edge(eid, terminus, origin, -label)


@dataclass(frozen=True)
class LabeledGraph:
    rank: int
    vertices: frozenset[int]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.rank < 2:
            raise RankError(f"rank must be at least 2, got {self.rank}")
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.eid)))
        seen: set[int] = set()
        for e in self.edges:
            if e.eid in seen:
                raise ValueError(f"duplicate edge id {e.eid}")
            seen.add(e.eid)
            if e.origin not in self.vertices or e.terminus not in self.vertices:
                raise ValueError(f"edge {e.eid} endpoint outside vertex set")
            if e.label > self.rank:
                raise RankError(f"edge {e.eid} label {e.label} exceeds rank {self.rank}")

    # -- directed-edge accessors ------------------------------------------

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.eid == eid:
                return e
        raise KeyError(eid)

    def edge_map(self) -> dict[int, Edge]:
        return {e.eid: e for e in self.edges}

    def dir_origin(self, d: int) -> int:
        e = self.edge(abs(d))
        return e.origin if d > 0 else e.terminus

    def dir_terminus(self, d: int) -> int:
        e = self.edge(abs(d))
        return e.terminus if d > 0 else e.origin

    def dir_label(self, d: int) -> int:
        e = self.edge(abs(d))
        return e.label if d > 0 else -e.label

    def directed_edges(self) -> list[int]:
        return [s * e.eid for e in self.edges for s in (1, -1)]

    def out_edges(self, v: int) -> list[int]:
        """Directed edges with origin ``v``, in deterministic order."""
        out = []
        for e in self.edges:
            if e.origin == v:
                out.append(e.eid)
            if e.terminus == v:
                out.append(-e.eid)
        out.sort(key=lambda d: (abs(d), 0 if d > 0 else 1))
        return out

    def in_labels(self, v: int) -> set[int]:
        """Labels of directed edges terminating at ``v``."""
        labels = set()
        for e in self.edges:
            if e.terminus == v:
                labels.add(e.label)
            if e.origin == v:
                labels.add(-e.label)
        return labels

    def valence(self, v: int) -> int:
        n = 0
        for e in self.edges:
            n += (e.origin == v) + (e.terminus == v)
        return n


@dataclass(frozen=True)
class BasedGraph:
    graph: LabeledGraph
    basepoint: int

    def __post_init__(self) -> None:
        if self.basepoint not in self.graph.vertices:
            raise ValueError(f"basepoint {self.basepoint} not a vertex")


@dataclass(frozen=True)
class GraphMorphism:
    """Vertex and edge-pair maps; directed edges map by ``d -> sign(d) * edge_map[|d|]``."""

    vertex_map: dict[int, int] = field(default_factory=dict)
    edge_map: dict[int, int] = field(default_factory=dict)


# -- builders --------------------------------------------------------------


def rose(n: int) -> LabeledGraph:
    """One vertex with one loop per generator."""
    if n < 2:
        raise RankError(f"rose needs rank at least 2, got {n}")
    return LabeledGraph(n, frozenset({0}), tuple(Edge(i, 0, 0, i) for i in range(1, n + 1)))


def circuit(c: CyclicWord) -> LabeledGraph:
    """A cycle of ``len(c)`` edges whose closed path reads ``c``."""
    k = len(c)
    edges = tuple(
        oriented_edge(i + 1, i, (i + 1) % k, c.letters[i]) for i in range(k)
    )
    return LabeledGraph(c.rank, frozenset(range(k)), edges)


def disjoint_circuits(classes, rank: int | None = None) -> LabeledGraph:
    """Disjoint union of one circuit per conjugacy class, in canonical order."""
    classes = normalize_classes(classes)
    if rank is None:
        if not classes:
            raise ValueError("empty class set needs an explicit rank")
        rank = classes[0].rank
    elif classes and classes[0].rank != rank:
        raise RankError(f"classes have rank {classes[0].rank}, expected {rank}")
    vertices: set[int] = set()
    edges: list[Edge] = []
    v_off = 0
    e_off = 0
    for c in classes:
        k = len(c)
        vertices.update(range(v_off, v_off + k))
        for i in range(k):
            edges.append(
                oriented_edge(e_off + i + 1, v_off + i, v_off + (i + 1) % k, c.letters[i])
            )
        v_off += k
        e_off += k
    return LabeledGraph(rank, frozenset(vertices), tuple(edges))


def wedge_of_words(ws: tuple[Word, ...], rank: int) -> BasedGraph:
    """Subdivided circles reading the given words, joined at basepoint 0."""
    for w in ws:
        if w.rank != rank:
            raise RankError(f"word rank {w.rank} differs from {rank}")
        if len(w) == 0 or not is_reduced(w):
            raise ValueError(f"wedge words must be reduced and nonempty: {w!s}")
    vertices = {0}
    edges: list[Edge] = []
    next_v = 1
    next_e = 1
    for w in ws:
        k = len(w)
        stops = [0] + list(range(next_v, next_v + k - 1)) + [0]
        next_v += k - 1
        vertices.update(stops)
        for i in range(k):
            edges.append(oriented_edge(next_e, stops[i], stops[i + 1], w.letters[i]))
            next_e += 1
    return BasedGraph(LabeledGraph(rank, frozenset(vertices), tuple(edges)), 0)


# -- basic invariants ------------------------------------------------------


def connected_components(g: LabeledGraph) -> list[frozenset[int]]:
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for e in g.edges:
        adj[e.origin].add(e.terminus)
        adj[e.terminus].add(e.origin)
    comps: list[frozenset[int]] = []
    seen: set[int] = set()
    for v in sorted(g.vertices):
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for x in adj[u]:
                if x not in comp:
                    comp.add(x)
                    queue.append(x)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: LabeledGraph) -> bool:
    return len(connected_components(g)) <= 1


def betti(g: LabeledGraph) -> int:
    """First Betti number: edge pairs - vertices + components."""
    return len(g.edges) - len(g.vertices) + len(connected_components(g))


def core(g: LabeledGraph) -> LabeledGraph:
    """Delete valence <= 1 vertices until none remain; may be empty."""
    vertices = set(g.vertices)
    edges = list(g.edges)
    while True:
        val = Counter()
        for e in edges:
            val[e.origin] += 1
            val[e.terminus] += 1
        victims = {v for v in vertices if val[v] <= 1}
        if not victims:
            return LabeledGraph(g.rank, frozenset(vertices), tuple(edges))
        vertices -= victims
        edges = [e for e in edges if e.origin not in victims and e.terminus not in victims]


def core_pair(b: BasedGraph) -> BasedGraph:
    """Based core: keep the basepoint component, then delete valence-1
    vertices other than the basepoint."""
    comp = next(c for c in connected_components(b.graph) if b.basepoint in c)
    vertices = set(comp)
    edges = [e for e in b.graph.edges if e.origin in vertices]
    while True:
        val = Counter()
        for e in edges:
            val[e.origin] += 1
            val[e.terminus] += 1
        victims = {v for v in vertices if val[v] <= 1 and v != b.basepoint}
        if not victims:
            g = LabeledGraph(b.graph.rank, frozenset(vertices), tuple(edges))
            return BasedGraph(g, b.basepoint)
        vertices -= victims
        edges = [e for e in edges if e.origin not in victims and e.terminus not in victims]


def is_folded(g: LabeledGraph) -> bool:
    """No two distinct directed edges share an origin and a label."""
    seen: set[tuple[int, int]] = set()
    for d in g.directed_edges():
        key = (g.dir_origin(d), g.dir_label(d))
        if key in seen:
            return False
        seen.add(key)
    return True


def is_rose(g: LabeledGraph) -> bool:
    """Label-isomorphic to the rose: one vertex, each letter on exactly one loop."""
    return len(g.vertices) == 1 and sorted(e.label for e in g.edges) == list(
        range(1, g.rank + 1)
    )


# -- readability -----------------------------------------------------------


def closed_path_reading(
    g: LabeledGraph, c: CyclicWord
) -> tuple[int, tuple[int, ...]] | None:
    """A closed path spelling ``c``, as ``(start vertex, directed edges)``.

    The search runs over product states (vertex, position); the path is
    not required to be reduced, matching the definition of readability.
    """
    if g.rank != c.rank:
        raise RankError(f"graph rank {g.rank} differs from word rank {c.rank}")
    k = len(c)
    out_by_label: dict[tuple[int, int], list[int]] = {}
    for d in sorted(g.directed_edges(), key=lambda d: (abs(d), 0 if d > 0 else 1)):
        out_by_label.setdefault((g.dir_origin(d), g.dir_label(d)), []).append(d)
    for start in sorted(g.vertices):
        prev: dict[tuple[int, int], tuple[int, int, int] | None] = {(start, 0): None}
        queue = deque([(start, 0)])
        goal = None
        while queue and goal is None:
            v, i = queue.popleft()
            if i == k:
                if v == start:
                    goal = (v, i)
                continue
            for d in out_by_label.get((v, c.letters[i]), ()):
                state = (g.dir_terminus(d), i + 1)
                if state not in prev:
                    prev[state] = (v, i, d)
                    if state == (start, k):
                        goal = state
                        break
                    queue.append(state)
        if goal is not None:
            path: list[int] = []
            state = goal
            while prev[state] is not None:
                v, i, d = prev[state]  # type: ignore[misc]
                path.append(d)
                state = (v, i)
            return start, tuple(reversed(path))
    return None


def reads_cyclic_word(g: LabeledGraph, c: CyclicWord) -> bool:
    return closed_path_reading(g, c) is not None


def path_from_vertex_reading(g: LabeledGraph, v0: int, w: Word) -> tuple[int, ...] | None:
    """A closed path based at ``v0`` spelling the word ``w`` (empty word allowed)."""
    if g.rank != w.rank:
        raise RankError(f"graph rank {g.rank} differs from word rank {w.rank}")
    k = len(w)
    prev: dict[tuple[int, int], tuple[int, int, int] | None] = {(v0, 0): None}
    queue = deque([(v0, 0)])
    while queue:
        v, i = queue.popleft()
        if i == k:
            continue
        for d in g.out_edges(v):
            if g.dir_label(d) != w.letters[i]:
                continue
            state = (g.dir_terminus(d), i + 1)
            if state not in prev:
                prev[state] = (v, i, d)
                queue.append(state)
    if (v0, k) not in prev:
        return None
    path: list[int] = []
    state = (v0, k)
    while prev[state] is not None:
        v, i, d = prev[state]  # type: ignore[misc]
        path.append(d)
        state = (v, i)
    return tuple(reversed(path))


# -- morphisms -------------------------------------------------------------


def verify_morphism(m: GraphMorphism, src: LabeledGraph, dst: LabeledGraph) -> bool:
    """Check that ``m`` is a total label-preserving graph morphism."""
    if src.rank != dst.rank:
        return False
    if set(m.vertex_map) != set(src.vertices):
        return False
    if any(img not in dst.vertices for img in m.vertex_map.values()):
        return False
    if set(m.edge_map) != {e.eid for e in src.edges}:
        return False
    dst_edges = dst.edge_map()
    for e in src.edges:
        img = dst_edges.get(m.edge_map[e.eid])
        if img is None:
            return False
        if img.label != e.label:
            return False
        if m.vertex_map[e.origin] != img.origin or m.vertex_map[e.terminus] != img.terminus:
            return False
    return True


def rose_morphism(g: LabeledGraph) -> GraphMorphism:
    """The unique label-preserving morphism to the rose of the same rank."""
    return GraphMorphism(
        vertex_map={v: 0 for v in g.vertices},
        edge_map={e.eid: e.label for e in g.edges},
    )


def _vertex_signature(g: LabeledGraph, v: int) -> tuple[int, ...]:
    return tuple(sorted(g.dir_label(d) for d in g.out_edges(v)))


def is_label_isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    """Existence of a label-preserving graph isomorphism.

    Backtracking over vertex bijections with signature pruning; intended
    for the small graphs this library works with.
    """
    if g.rank != h.rank or len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    gsig = sorted(_vertex_signature(g, v) for v in g.vertices)
    hsig = sorted(_vertex_signature(h, v) for v in h.vertices)
    if gsig != hsig:
        return False

    def pair_labels(gr: LabeledGraph, a: int, b: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        fwd = sorted(e.label for e in gr.edges if (e.origin, e.terminus) == (a, b))
        if a == b:
            return tuple(fwd), tuple(fwd)
        bwd = sorted(e.label for e in gr.edges if (e.origin, e.terminus) == (b, a))
        return tuple(fwd), tuple(bwd)

    gverts = sorted(g.vertices)
    hverts = sorted(h.vertices)
    hsigs = {v: _vertex_signature(h, v) for v in hverts}
    gsigs = {v: _vertex_signature(g, v) for v in gverts}
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(gverts):
            return True
        v = gverts[i]
        for w in hverts:
            if w in used or hsigs[w] != gsigs[v]:
                continue
            ok = pair_labels(g, v, v) == pair_labels(h, w, w)
            if ok:
                for u, x in assignment.items():
                    if pair_labels(g, v, u) != pair_labels(h, w, x):
                        ok = False
                        break
            if ok:
                assignment[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del assignment[v]
                used.remove(w)
        return False

    return extend(0)


# -- text formats ----------------------------------------------------------


def graph_to_text(g: LabeledGraph) -> str:
    lines = [f"rank {g.rank}"]
    lines += [f"vertex {v}" for v in sorted(g.vertices)]
    lines += [
        f"edge {e.eid} {e.origin} {e.terminus} {letter_to_char(e.label)}" for e in g.edges
    ]
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> LabeledGraph:
    rank: int | None = None
    vertices: set[int] = set()
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "rank" and len(parts) == 2:
                rank = int(parts[1])
            elif parts[0] == "vertex" and len(parts) == 2:
                vertices.add(int(parts[1]))
            elif parts[0] == "edge" and len(parts) == 5:
                eid, origin, terminus = int(parts[1]), int(parts[2]), int(parts[3])
                label = letter_from_char(parts[4])
                edges.append(oriented_edge(eid, origin, terminus, label))
            else:
                raise ValueError(f"unrecognized graph line {lineno}: {raw!r}")
        except (ValueError, KeyError) as exc:
            raise ValueError(f"bad graph line {lineno}: {raw!r}") from exc
    if rank is None:
        raise ValueError("graph text missing a rank line")
    return LabeledGraph(rank, frozenset(vertices), tuple(edges))


def graph_to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in sorted(g.vertices):
        lines.append(f'  v{v} [shape=circle label="{v}"];')
    for e in g.edges:
        lines.append(f'  v{e.origin} -> v{e.terminus} [label="{letter_to_char(e.label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def subdivide_edge(g: LabeledGraph, eid: int) -> LabeledGraph:
    """Replace one edge by a two-edge path through a fresh vertex."""
    e = g.edge(eid)
    fresh_v = max(g.vertices) + 1
    fresh_e = max(x.eid for x in g.edges) + 1
    edges = [x for x in g.edges if x.eid != eid]
    edges.append(Edge(eid, e.origin, fresh_v, e.label))
    edges.append(Edge(fresh_e, fresh_v, e.terminus, e.label))
    return LabeledGraph(g.rank, g.vertices | {fresh_v}, tuple(edges))
