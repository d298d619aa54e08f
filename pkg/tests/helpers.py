"""Random instance generators and brute-force oracles shared by the tests.

The oracles here deliberately avoid the graph machinery under test: they
work with words only.
"""
from __future__ import annotations

import itertools
import random

from dcoset.graph import Edge, LabeledGraph
from dcoset.words import Word, concat, invert


def random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 0) -> Word:
    n = rng.randint(min_len, max_len)
    w: list[int] = []
    while len(w) < n:
        x = rng.choice([1, -1]) * rng.randint(1, rank)
        if w and w[-1] == -x:
            continue
        w.append(x)
    return tuple(w)


def random_gens(rng, rank, max_gens, max_len, min_gens=0) -> list[Word]:
    return [random_word(rng, rank, max_len, 1) for _ in range(rng.randint(min_gens, max_gens))]


def all_reduced_words(rank: int, max_len: int):
    """Every reduced word of length <= max_len, shortest first."""
    letters = [s * x for x in range(1, rank + 1) for s in (1, -1)]
    layer: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in letters if not (w and w[-1] == -x)]
        yield from layer


def products(gens, budget: int, limit: int | None = None) -> set[Word] | None:
    """Elements reachable from 1 by multiplying by generators or their inverses,
    never passing through an element longer than ``budget``.

    Returns None once more than ``limit`` elements have been found.
    """
    moves = [w for g in gens if g for w in (tuple(g), invert(g))]
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for u in frontier:
            for m in moves:
                v = concat(u, m)
                if len(v) <= budget and v not in seen:
                    seen.add(v)
                    nxt.append(v)
        if limit is not None and len(seen) > limit:
            return None
        frontier = nxt
    return seen


def short_products(gens, count: int) -> set[Word]:
    """All products of at most ``count`` generators and inverses."""
    moves = [w for g in gens if g for w in (tuple(g), invert(g))]
    out = {()}
    for k in range(1, count + 1):
        for combo in itertools.product(moves, repeat=k):
            out.add(concat(*combo))
    return out


def random_element(rng, gens, steps: int) -> Word:
    w: Word = ()
    if not gens:
        return w
    for _ in range(steps):
        g = rng.choice(gens)
        w = concat(w, g if rng.random() < 0.5 else invert(g))
    return w


def random_folded_graph(rng: random.Random, rank: int, max_vertices: int) -> LabeledGraph:
    """Connected folded graph: a random tree plus a random number of extra edges."""
    target = rng.randint(1, max_vertices)
    out: dict[tuple[int, int], int] = {}
    edges: list[Edge] = []

    def link(u: int, x: int, v: int) -> bool:
        if (u, x) in out or (v, -x) in out:
            return False
        out[(u, x)] = v
        out[(v, -x)] = u
        edges.append((x, u, v) if x > 0 else (-x, v, u))
        return True

    n = 1
    while n < target:
        u = rng.randrange(n)
        x = rng.choice([1, -1]) * rng.randint(1, rank)
        if link(u, x, n):
            n += 1
    for _ in range(rng.randint(0, n * rank)):
        link(rng.randrange(n), rng.choice([1, -1]) * rng.randint(1, rank), rng.randrange(n))
    return LabeledGraph(rank, n, tuple(edges), rng.randrange(n))


def is_ab_form(w: Word) -> bool:
    """w = a^m b^n as a reduced word."""
    i = 0
    while i < len(w) and abs(w[i]) == 1:
        i += 1
    return all(abs(x) == 2 for x in w[i:])

