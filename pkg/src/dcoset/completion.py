"""Canonical completion of a finite folded graph to a finite cover.

In a folded graph the edges carrying one letter ``x`` form disjoint directed
paths and cycles.  Completion closes every maximal ``x``-path with one edge
from its terminal vertex back to its initial vertex and puts an ``x``-loop on
every vertex that has no ``x``-edge at all.  Nothing else is added, so the
vertex set is unchanged and no two distinct X0-components are ever joined.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MemberAlready, NotFolded
from .graph import P_END, Edge, LabeledGraph, Subgroup, add_path, is_member, read
from .words import Word, reduce


@dataclass(frozen=True)
class CompletionReport:
    source: LabeledGraph
    cover: LabeledGraph
    added: tuple[Edge, ...]
    # letter -> maximal x-paths (as vertex sequences) that were closed up
    closed_paths: dict[int, list[list[int]]]

    def to_json(self) -> dict:
        return {"cover": self.cover.to_json(), "added": [list(e) for e in self.added]}


def complete(g: LabeledGraph) -> CompletionReport:
    if not g.is_folded:
        raise NotFolded("completion needs a folded graph")
    succ = g.succ
    added: list[Edge] = []
    closed: dict[int, list[list[int]]] = {}
    for x in range(1, g.rank + 1):
        closed[x] = []
        for v in range(g.n):
            out, inc = succ.get((v, x)), succ.get((v, -x))
            # a loop is a single edge with both endpoints at v
            n_edges = (out is not None) + (inc is not None) - (out == v)
            assert n_edges in (0, 1, 2), n_edges
            if out is None and inc is None:
                added.append((x, v, v))
            elif inc is None:
                # v starts a maximal x-path; walk to its terminal vertex
                path = [v]
                while (nxt := succ.get((path[-1], x))) is not None:
                    path.append(nxt)
                closed[x].append(path)
                added.append((x, path[-1], v))
    cover = LabeledGraph(g.rank, g.n, g.edges + tuple(added), g.basepoint, g.marks)
    return CompletionReport(g, cover, tuple(added), closed)


def hall_witness(h: Subgroup, f: Word) -> LabeledGraph:
    """Finite cover M with H <= M and f not in M.

    Built by completing core(H) with the path of ``f`` attached; the index of
    M is the vertex count of that graph.
    """
    f = reduce(f)
    if is_member(h, f):
        raise MemberAlready("f lies in H")
    gamma = add_path(h.core, h.core.basepoint, f, P_END)
    m = complete(gamma).cover
    assert read(m, m.basepoint, f) != m.basepoint
    return m
