"""Whitehead graphs of labeled graphs and of sets of conjugacy classes.

The Whitehead graph on rank n has the 2n letters as vertices, always all
of them, and a simple undirected edge {x, y} whenever the word x.y^-1 is
the label of a reduced two-edge path (graph version) or x.y^-1 occurs in
a power of a cyclically reduced representative (class version).  A letter
that never occurs is an isolated vertex, which makes the graph
disconnected; that convention is load-bearing for the tameness criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import LabeledGraph
from .words import RankError, letter_key, letter_to_char


@dataclass(frozen=True)
class WhiteheadGraph:
    rank: int
    edges: frozenset[frozenset[int]]

    def __post_init__(self) -> None:
        if self.rank < 2:
            raise RankError(f"rank must be at least 2, got {self.rank}")
        for edge in self.edges:
            if len(edge) != 2:
                raise ValueError(f"Whitehead edges join two distinct letters: {set(edge)}")
            for v in edge:
                if v == 0 or abs(v) > self.rank:
                    raise RankError(f"letter {v} out of range for rank {self.rank}")

    def letters(self) -> list[int]:
        return sorted(
            [v for i in range(1, self.rank + 1) for v in (i, -i)], key=letter_key
        )

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.letters()}
        for edge in self.edges:
            u, v = tuple(edge)
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def sorted_edges(self) -> list[tuple[int, int]]:
        pairs = [tuple(sorted(edge, key=letter_key)) for edge in self.edges]
        return sorted(pairs, key=lambda p: (letter_key(p[0]), letter_key(p[1])))


def whitehead_edge(u: int, v: int) -> frozenset[int]:
    if u == v:
        raise ValueError(f"no Whitehead self-loops: {u}")
    return frozenset((u, v))


def whitehead_of_graph(g: LabeledGraph) -> WhiteheadGraph:
    """Edges {x, y} for distinct labels x, y of two edges into a common vertex.

    Two parallel same-label edges meeting at a vertex contribute nothing:
    the corresponding two-edge path reads x.x^-1, which is not reduced.
    """
    edges: set[frozenset[int]] = set()
    for v in g.vertices:
        incoming = sorted(g.in_labels(v), key=letter_key)
        for i, x in enumerate(incoming):
            for y in incoming[i + 1 :]:
                edges.add(whitehead_edge(x, y))
    return WhiteheadGraph(g.rank, frozenset(edges))


def whitehead_of_classes(classes, rank: int | None = None) -> WhiteheadGraph:
    """Edges {u, v^-1} over cyclically consecutive letter pairs (u, v).

    The wrap-around pair realizes the "powers" clause; for a length-one
    class [x] it is the only contribution and yields the edge {x, x^-1}.
    """
    classes = list(classes)
    if rank is None:
        if not classes:
            raise ValueError("empty class set needs an explicit rank")
        rank = classes[0].rank
    edges: set[frozenset[int]] = set()
    for c in classes:
        if c.rank != rank:
            raise RankError(f"class rank {c.rank} differs from {rank}")
        k = len(c)
        for i in range(k):
            u = c.letters[i]
            v = c.letters[(i + 1) % k]
            edges.add(whitehead_edge(u, -v))
    return WhiteheadGraph(rank, frozenset(edges))


def components(w: WhiteheadGraph) -> list[tuple[int, ...]]:
    """Connected components as letter tuples, isolated letters included."""
    adj = w.adjacency()
    comps: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for v in w.letters():
        if v in seen:
            continue
        stack = [v]
        comp = {v}
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        comps.append(tuple(sorted(comp, key=letter_key)))
    return comps


def is_connected(w: WhiteheadGraph) -> bool:
    return len(components(w)) == 1


def cut_vertices(w: WhiteheadGraph) -> set[int]:
    """Articulation points: removal disconnects the vertex's own component."""
    adj = w.adjacency()
    order: dict[int, int] = {}
    low: dict[int, int] = {}
    result: set[int] = set()
    counter = 0

    def visit(root: int) -> None:
        nonlocal counter
        stack: list[tuple[int, int | None, "list[int]"]] = [(root, None, list(adj[root]))]
        order[root] = low[root] = counter
        counter += 1
        root_children = 0
        while stack:
            v, parent, todo = stack[-1]
            if todo:
                x = todo.pop()
                if x not in order:
                    if v == root:
                        root_children += 1
                    order[x] = low[x] = counter
                    counter += 1
                    stack.append((x, v, list(adj[x])))
                elif x != parent:
                    low[v] = min(low[v], order[x])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if u != root and low[v] >= order[u]:
                        result.add(u)
        if root_children > 1:
            result.add(root)

    for v in w.letters():
        if v not in order:
            visit(v)
    return result


def is_subgraph(w1: WhiteheadGraph, w2: WhiteheadGraph) -> bool:
    if w1.rank != w2.rank:
        raise RankError(f"rank mismatch: {w1.rank} vs {w2.rank}")
    return w1.edges <= w2.edges


def whitehead_to_dot(w: WhiteheadGraph, name: str = "wh") -> str:
    cuts = cut_vertices(w)
    lines = [f"graph {name} {{"]
    for i, comp in enumerate(components(w)):
        lines.append(f"  subgraph cluster_{i} {{")
        for v in comp:
            shape = "doublecircle" if v in cuts else "circle"
            lines.append(f'    l{abs(v)}_{"p" if v > 0 else "m"} [shape={shape} label="{letter_to_char(v)}"];')
        lines.append("  }")
    for u, v in w.sorted_edges():
        lines.append(
            f'  l{abs(u)}_{"p" if u > 0 else "m"} -- l{abs(v)}_{"p" if v > 0 else "m"};'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
