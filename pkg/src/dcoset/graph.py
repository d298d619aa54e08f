"""Labeled graphs over a free alphabet: folding, cores, reading, fiber products.

Edges are stored as ``(x, u, v)`` with ``x`` a positive letter; reading the
inverse letter ``-x`` traverses such an edge from ``v`` back to ``u``.  Vertices
are dense ints ``0..n-1``.  Every structural operation re-indexes vertices
breadth-first from the basepoint, visiting letters in increasing order and,
for each letter, the outgoing direction before the incoming one.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import AlphabetMismatch, Disconnected, NotFolded
from .words import Word, concat, format_word, invert, reduce

Edge = tuple[int, int, int]

P_END = "p_end"


@dataclass(frozen=True)
class LabeledGraph:
    rank: int
    n: int
    edges: tuple[Edge, ...]
    basepoint: int = 0
    marks: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if not 0 <= self.basepoint < self.n:
            raise ValueError(f"basepoint {self.basepoint} out of range")
        for name, v in self.marks:
            if not 0 <= v < self.n:
                raise ValueError(f"mark {name!r} at invalid vertex {v}")
        for x, u, v in self.edges:
            if not (1 <= x <= self.rank and 0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"invalid edge {(x, u, v)}")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "marks", tuple(sorted(self.marks)))

    def mark(self, name: str) -> int | None:
        return dict(self.marks).get(name)

    @cached_property
    def succ(self) -> dict[tuple[int, int], int]:
        """(vertex, signed letter) -> neighbour, first edge wins on conflicts."""
        table: dict[tuple[int, int], int] = {}
        for x, u, v in self.edges:
            table.setdefault((u, x), v)
            table.setdefault((v, -x), u)
        return table

    @cached_property
    def is_folded(self) -> bool:
        seen = set()
        for x, u, v in self.edges:
            if (u, x) in seen or (v, -x) in seen:
                return False
            seen.add((u, x))
            seen.add((v, -x))
        return True

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def neighbours(self, v: int) -> list[tuple[int, Edge, int]]:
        """(signed letter, edge, endpoint) pairs in the fixed traversal order."""
        return self._adjacency[v]

    @cached_property
    def _adjacency(self) -> list[list[tuple[int, Edge, int]]]:
        adj: list[list[tuple[int, Edge, int]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            x, u, v = e
            adj[u].append((x, e, v))
            adj[v].append((-x, e, u))
        for lst in adj:
            lst.sort(key=lambda t: (abs(t[0]), t[0] < 0, t[2], t[1]))
        return adj

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "n": self.n,
            "basepoint": self.basepoint,
            "edges": [list(e) for e in self.edges],
            "marks": dict(self.marks),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LabeledGraph":
        return cls(
            rank=int(data["rank"]),
            n=int(data["n"]),
            edges=tuple((int(x), int(u), int(v)) for x, u, v in data["edges"]),
            basepoint=int(data.get("basepoint", 0)),
            marks=tuple((str(k), int(v)) for k, v in dict(data.get("marks", {})).items()),
        )


def _bfs_order(g: LabeledGraph, root: int) -> list[int]:
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for _, _, w in g.neighbours(v):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def relabel(g: LabeledGraph) -> LabeledGraph:
    """Renumber vertices breadth-first from the basepoint.

    Vertices unreachable from the basepoint keep their relative order after
    the reachable ones.  Parallel copies of an edge are kept.
    """
    order = _bfs_order(g, g.basepoint)
    if len(order) < g.n:
        seen = set(order)
        order += [v for v in range(g.n) if v not in seen]
    new = {old: i for i, old in enumerate(order)}
    return LabeledGraph(
        rank=g.rank,
        n=g.n,
        edges=tuple((x, new[u], new[v]) for x, u, v in g.edges),
        basepoint=0,
        marks=tuple((k, new[v]) for k, v in g.marks),
    )


def rose(rank: int) -> LabeledGraph:
    """One vertex with a loop per letter: the cover of the whole group."""
    return LabeledGraph(rank, 1, tuple((x, 0, 0) for x in range(1, rank + 1)))


def wedge(words: Iterable[Sequence[int]], rank: int) -> LabeledGraph:
    """Unfolded bouquet: one closed path at vertex 0 per word."""
    edges: list[Edge] = []
    n = 1
    for w in words:
        if not w:
            continue
        prev = 0
        for i, x in enumerate(w):
            if i == len(w) - 1:
                nxt = 0
            else:
                nxt = n
                n += 1
            edges.append((x, prev, nxt) if x > 0 else (-x, nxt, prev))
            prev = nxt
    return LabeledGraph(rank, n, tuple(edges))


def fold(g: LabeledGraph, order: Sequence[int] | None = None) -> LabeledGraph:
    """Stallings folding via union-find.

    ``order`` optionally permutes the processing order of ``g.edges``; the
    result does not depend on it.
    """
    parent = list(range(g.n))

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    # per root: signed letter -> some neighbour (any member of its class)
    star: list[dict[int, int]] = [{} for _ in range(g.n)]
    pending: list[tuple[int, int]] = []

    def attach(u: int, x: int, v: int) -> None:
        other = star[u].get(x)
        if other is None:
            star[u][x] = v
        else:
            pending.append((other, v))

    def drain() -> None:
        while pending:
            a, b = pending.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if len(star[a]) < len(star[b]):
                a, b = b, a
            parent[b] = a
            moved, star[b] = star[b], {}
            for x, w in moved.items():
                attach(a, x, w)

    edges = g.edges if order is None else [g.edges[i] for i in order]
    for x, u, v in edges:
        ru, rv = find(u), find(v)
        attach(ru, x, rv)
        drain()
        attach(find(v), -x, find(u))
        drain()

    roots = sorted({find(v) for v in range(g.n)})
    index = {r: i for i, r in enumerate(roots)}
    folded = {(x, index[find(u)], index[find(v)]) for x, u, v in g.edges}
    return relabel(
        LabeledGraph(
            rank=g.rank,
            n=len(roots),
            edges=tuple(folded),
            basepoint=index[find(g.basepoint)],
            marks=tuple((k, index[find(v)]) for k, v in g.marks),
        )
    )


def trim(g: LabeledGraph, protected: Iterable[int] = ()) -> LabeledGraph:
    """Repeatedly delete unprotected vertices of total degree <= 1."""
    keep = set(protected) | {g.basepoint} | {v for _, v in g.marks}
    deg = [0] * g.n
    for _, u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    alive = [True] * g.n
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (_, u, v) in enumerate(g.edges):
        incident[u].append(i)
        if v != u:
            incident[v].append(i)
    edge_alive = [True] * len(g.edges)
    stack = [v for v in range(g.n) if deg[v] <= 1 and v not in keep]
    while stack:
        v = stack.pop()
        if not alive[v] or deg[v] > 1 or v in keep:
            continue
        alive[v] = False
        for i in incident[v]:
            if not edge_alive[i]:
                continue
            edge_alive[i] = False
            _, a, b = g.edges[i]
            w = b if a == v else a
            deg[w] -= 1
            deg[v] -= 1
            if w != v and deg[w] <= 1 and w not in keep:
                stack.append(w)
    new = {}
    for v in range(g.n):
        if alive[v]:
            new[v] = len(new)
    return relabel(
        LabeledGraph(
            rank=g.rank,
            n=len(new),
            edges=tuple((x, new[u], new[v]) for i, (x, u, v) in enumerate(g.edges) if edge_alive[i]),
            basepoint=new[g.basepoint],
            marks=tuple((k, new[v]) for k, v in g.marks),
        )
    )


def read(g: LabeledGraph, start: int, w: Sequence[int]) -> int | None:
    """Follow ``w`` from ``start``; None when some step has no edge."""
    succ = g.succ
    v = start
    for x in w:
        nxt = succ.get((v, x))
        if nxt is None:
            return None
        v = nxt
    return v


def is_complete(g: LabeledGraph) -> bool:
    if not g.is_folded:
        return False
    return len(g.edges) == g.n * g.rank


def x0_component(g: LabeledGraph, v: int, x0: Iterable[int]) -> set[int]:
    letters = set(x0)
    comp = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for x, _, w in g.neighbours(u):
            if abs(x) in letters and w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def components(g: LabeledGraph, x0: Iterable[int]) -> list[frozenset[int]]:
    """Partition of the vertex set into X0-components."""
    letters = frozenset(x0)
    seen: set[int] = set()
    parts = []
    for v in range(g.n):
        if v not in seen:
            comp = frozenset(x0_component(g, v, letters))
            seen |= comp
            parts.append(comp)
    return parts


def add_path(g: LabeledGraph, start: int, w: Sequence[int], mark: str = P_END) -> LabeledGraph:
    """Attach the path reading ``w`` from ``start`` and mark its endpoint.

    Existing edges are reused as far as ``w`` can be read; the unread suffix
    gets fresh vertices.  The result is folded and trimmed, keeping the
    basepoint and every mark.
    """
    v = start
    i = 0
    while i < len(w):
        nxt = g.succ.get((v, w[i]))
        if nxt is None:
            break
        v = nxt
        i += 1
    edges = list(g.edges)
    n = g.n
    for x in w[i:]:
        edges.append((x, v, n) if x > 0 else (-x, n, v))
        v = n
        n += 1
    marks = [(k, u) for k, u in g.marks if k != mark] + [(mark, v)]
    h = LabeledGraph(g.rank, n, tuple(edges), g.basepoint, tuple(marks))
    return trim(fold(h))


def canonical_form(g: LabeledGraph) -> tuple:
    """Isomorphism invariant of a connected based graph."""
    h = relabel(g)
    return (h.rank, h.n, h.edges, h.marks)


def pullback(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Basepoint component of the fiber product."""
    if g1.rank != g2.rank:
        raise AlphabetMismatch(f"rank {g1.rank} vs {g2.rank}")
    if not (g1.is_folded and g2.is_folded):
        raise NotFolded("pullback needs folded graphs")
    s1, s2 = g1.succ, g2.succ
    start = (g1.basepoint, g2.basepoint)
    index = {start: 0}
    queue = deque([start])
    edges = set()
    letters = [s * x for x in range(1, g1.rank + 1) for s in (1, -1)]
    while queue:
        p = queue.popleft()
        u, v = p
        for x in letters:
            a, b = s1.get((u, x)), s2.get((v, x))
            if a is None or b is None:
                continue
            q = (a, b)
            if q not in index:
                index[q] = len(index)
                queue.append(q)
            edges.add((x, index[p], index[q]) if x > 0 else (-x, index[q], index[p]))
    return relabel(LabeledGraph(g1.rank, len(index), tuple(edges), 0))


def spanning_tree(
    g: LabeledGraph, root: int | None = None, prefer: Iterable[Edge] = ()
) -> frozenset[Edge]:
    """Breadth-first spanning tree, exhausting ``prefer`` edges first."""
    root = g.basepoint if root is None else root
    preferred = set(prefer)
    seen = {root}
    visited = [root]
    tree = set()

    def grow(allowed) -> None:
        queue = deque(visited)
        while queue:
            v = queue.popleft()
            for _, e, w in g.neighbours(v):
                if w in seen or not allowed(e):
                    continue
                seen.add(w)
                visited.append(w)
                tree.add(e)
                queue.append(w)

    grow(lambda e: e in preferred)
    grow(lambda e: True)
    if len(seen) < g.n:
        raise Disconnected(f"{g.n - len(seen)} vertices unreachable from {root}")
    return frozenset(tree)


def tree_paths(g: LabeledGraph, tree: Iterable[Edge]) -> list[Word]:
    """For each vertex, the label of the tree path from the basepoint."""
    tree = set(tree)
    paths: list[Word | None] = [None] * g.n
    paths[g.basepoint] = ()
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for x, e, w in g.neighbours(v):
            if e in tree and paths[w] is None:
                paths[w] = paths[v] + (x,)
                queue.append(w)
    if any(p is None for p in paths):
        raise Disconnected("tree does not span the graph")
    return paths  # type: ignore[return-value]


def basis(g: LabeledGraph, tree: Iterable[Edge]) -> list[Word]:
    """Free basis of the recognized subgroup, one word per non-tree edge.

    Words follow the sorted order of the non-tree edges.
    """
    tree = frozenset(tree)
    paths = tree_paths(g, tree)
    return [
        concat(paths[u], (x,), invert(paths[v]))
        for x, u, v in g.edges
        if (x, u, v) not in tree
    ]


def recognized_basis(g: LabeledGraph) -> list[Word]:
    """Basis of the subgroup recognized at the basepoint of a folded graph."""
    return basis(g, spanning_tree(g))


def coset_orbit(m: LabeledGraph, seed: Iterable[int], gens: Iterable[Sequence[int]]) -> set[int]:
    gens = [tuple(w) for w in gens]
    moves = [w for g in gens for w in (g, invert(g))]
    orbit = set(seed)
    stack = list(orbit)
    while stack:
        v = stack.pop()
        for w in moves:
            u = read(m, v, w)
            if u is not None and u not in orbit:
                orbit.add(u)
                stack.append(u)
    return orbit


def move_basepoint(m: LabeledGraph, w: Sequence[int]) -> LabeledGraph:
    """Same graph based at v0 . w^-1, recognizing w M w^-1."""
    b = read(m, m.basepoint, invert(w))
    if b is None:
        raise ValueError("word cannot be read from the basepoint")
    return LabeledGraph(m.rank, m.n, m.edges, b, m.marks)


@dataclass(frozen=True)
class Subgroup:
    """A finitely generated subgroup with its Stallings core."""

    rank: int
    generators: tuple[Word, ...]
    core: LabeledGraph = field(compare=False, repr=False)

    def contains(self, w: Sequence[int]) -> bool:
        return is_member(self, w)


def subgroup_core(gens: Iterable[Sequence[int]], rank: int) -> Subgroup:
    gens = tuple(reduce(w) for w in gens)
    core = trim(fold(wedge(gens, rank)))
    return Subgroup(rank, gens, core)


def subgroup_from_graph(g: LabeledGraph) -> Subgroup:
    """Subgroup recognized at the basepoint of a folded graph."""
    return subgroup_core(recognized_basis(g), g.rank)


def is_member(h: Subgroup, w: Sequence[int]) -> bool:
    return read(h.core, h.core.basepoint, reduce(w)) == h.core.basepoint


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.n):
        attrs = ['shape=doublecircle' if v == g.basepoint else 'shape=circle']
        tags = [k for k, u in g.marks if u == v]
        label = f"{v}" + (f" ({', '.join(tags)})" if tags else "")
        attrs.append(f'label="{label}"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for x, u, v in g.edges:
        label = format_word((x,)) if x <= 26 else f"x{x}"
        lines.append(f'  {u} -> {v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
