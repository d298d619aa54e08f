"""Deciding f in HgK and building finite-index separators.

Pipeline, for an instance (H, g, K, f):

1. Conjugate: f in HgK iff f g^-1 in H K' with K' = g K g^-1.
2. Complete core(K') to a finite cover C.  Its subgroup F0 has finite index
   and K' is a free factor of F0: a spanning tree of C inside core(K') gives a
   basis Y of F0 whose first part Y1 (non-tree edges of the core) spans K'.
3. Split H into left cosets h_j (H n F0).  Then f' in HK' iff some h_j^-1 f'
   lies in F0 and, rewritten over Y, lies in (H n F0) <Y1>.
4. Over Y, K' is generated by letters, so membership is the X0-component
   test on core(H n F0) with the path of f'' attached; completing that graph
   gives a finite-index separator inside F0.
5. The per-coset separators, conjugated back by h_j and intersected, give M
   with M f' n HK' empty.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .certify import Certificate, verify_certificate
from .completion import complete
from .errors import IsMember, NotInSubgroup
from .graph import (
    P_END,
    Edge,
    LabeledGraph,
    Subgroup,
    add_path,
    basis,
    is_complete,
    move_basepoint,
    pullback,
    read,
    recognized_basis,
    relabel,
    spanning_tree,
    subgroup_core,
    x0_component,
)
from .words import Word, concat, conjugate, invert, reduce


@dataclass(frozen=True)
class ReducedInstance:
    H: Subgroup
    K: Subgroup
    f: Word


def conjugation_reduce(H: Subgroup, g: Word, K: Subgroup, f: Word) -> ReducedInstance:
    k_conj = subgroup_core([conjugate(g, k) for k in K.generators], K.rank)
    return ReducedInstance(H, k_conj, concat(f, invert(g)))


@dataclass(frozen=True)
class FreeFactorContext:
    rank: int
    cover: LabeledGraph
    tree: frozenset[Edge]
    basis_y: tuple[Word, ...]
    y1: frozenset[int]
    y2: frozenset[int]
    # non-tree edge -> its (1-based) Y letter
    letter_of: dict[Edge, int] = field(repr=False)

    @property
    def rank_y(self) -> int:
        return len(self.basis_y)

    @property
    def index(self) -> int:
        return self.cover.n

    def y1_words(self) -> list[Word]:
        return [self.basis_y[i - 1] for i in sorted(self.y1)]


def free_factor_embed(K: Subgroup) -> FreeFactorContext:
    core = K.core
    cover = complete(core).cover
    tree = spanning_tree(cover, cover.basepoint, prefer=core.edges)
    basis_y = basis(cover, tree)
    non_tree = [e for e in cover.edges if e not in tree]
    letter_of = {e: i + 1 for i, e in enumerate(non_tree)}
    in_core = core.edge_set
    y1 = frozenset(letter_of[e] for e in non_tree if e in in_core)
    y2 = frozenset(letter_of.values()) - y1
    return FreeFactorContext(K.rank, cover, tree, tuple(basis_y), y1, y2, letter_of)


def rewrite_to_y(ctx: FreeFactorContext, w: Word) -> Word:
    """Express an element of F0 in the basis Y."""
    succ = ctx.cover.succ
    v = ctx.cover.basepoint
    out = []
    for x in w:
        u = succ[(v, x)]
        e = (x, v, u) if x > 0 else (-x, u, v)
        y = ctx.letter_of.get(e)
        if y is not None:
            out.append(y if x > 0 else -y)
        v = u
    if v != ctx.cover.basepoint:
        raise NotInSubgroup("word does not lie in F0")
    return reduce(out)


def expand_from_y(ctx: FreeFactorContext, w: Word) -> Word:
    return concat(*(ctx.basis_y[y - 1] if y > 0 else invert(ctx.basis_y[-y - 1]) for y in w))


@dataclass(frozen=True)
class CosetDecomposition:
    """Left coset representatives of H n F0 in H, the first being 1.

    ``vertices[j]`` is the cover vertex reached by reading ``reps[j]^-1``.
    """

    reps: tuple[Word, ...]
    vertices: tuple[int, ...]


def coset_decomposition(ctx: FreeFactorContext, H: Subgroup) -> CosetDecomposition:
    cover = ctx.cover
    start = cover.basepoint
    # BFS over the orbit of v0; paths[v] reads from v0 to v, rep = its inverse
    paths = {start: ()}
    order = [start]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for gen in H.generators:
            for step in (invert(gen), gen):
                u = read(cover, v, step)
                if u not in paths:
                    paths[u] = concat(paths[v], step)
                    order.append(u)
    return CosetDecomposition(tuple(invert(paths[v]) for v in order), tuple(order))


def member_free_factor_case(
    h_y: Subgroup, y1: frozenset[int], f_y: Word
) -> tuple[bool, LabeledGraph]:
    """f_y in H_Y <y1> iff the endpoint of f_y's path is y1-connected to the basepoint."""
    gamma = add_path(h_y.core, h_y.core.basepoint, reduce(f_y), P_END)
    inside = gamma.mark(P_END) in x0_component(gamma, gamma.basepoint, y1)
    return inside, gamma


@dataclass
class CosetCase:
    rep: Word
    in_f0: bool
    f_y: Word | None = None
    member: bool = False
    gamma: LabeledGraph | None = None


@dataclass
class Analysis:
    reduced: ReducedInstance
    ctx: FreeFactorContext
    decomposition: CosetDecomposition
    h0_y: Subgroup
    cases: list[CosetCase]

    @property
    def member(self) -> bool:
        return any(c.member for c in self.cases)


def analyse(H: Subgroup, g: Word, K: Subgroup, f: Word) -> Analysis:
    g, f = reduce(g), reduce(f)
    red = conjugation_reduce(H, g, K, f)
    ctx = free_factor_embed(red.K)
    dec = coset_decomposition(ctx, H)
    h0 = pullback(H.core, ctx.cover)
    h0_y = subgroup_core([rewrite_to_y(ctx, w) for w in recognized_basis(h0)], ctx.rank_y)
    cases = []
    for rep in dec.reps:
        w = concat(invert(rep), red.f)
        case = CosetCase(rep, read(ctx.cover, ctx.cover.basepoint, w) == ctx.cover.basepoint)
        if case.in_f0:
            case.f_y = rewrite_to_y(ctx, w)
            case.member, case.gamma = member_free_factor_case(h0_y, ctx.y1, case.f_y)
        cases.append(case)
        if case.member:
            break
    return Analysis(red, ctx, dec, h0_y, cases)


def member(H: Subgroup, g: Word, K: Subgroup, f: Word) -> bool:
    return analyse(H, g, K, f).member


def y_cover_to_x(ctx: FreeFactorContext, m_y: LabeledGraph) -> LabeledGraph:
    """Cover over X of the subgroup of F0 that ``m_y`` recognizes over Y."""
    gens = [expand_from_y(ctx, w) for w in recognized_basis(m_y)]
    core = subgroup_core(gens, ctx.rank).core
    if not is_complete(core) or core.n != m_y.n * ctx.index:
        raise AssertionError("finite-index subgroup did not fold to a complete cover")
    return core


def separability_witness(H: Subgroup, g: Word, K: Subgroup, f: Word) -> Certificate:
    g, f = reduce(g), reduce(f)
    an = analyse(H, g, K, f)
    if an.member:
        raise IsMember("f lies in HgK")
    ctx = an.ctx
    # The left cosets h_j F0 are distinct, so at most one of them is f'F0.
    # Every other j is handled by M <= f' F0 f'^-1, which already contains
    # h_j M_j h_j^-1 for the j with h_j F0 = f'F0.
    pieces: list[LabeledGraph] = []
    for case in an.cases:
        if case.in_f0:
            m_y = complete(case.gamma).cover
            pieces.append(move_basepoint(y_cover_to_x(ctx, m_y), case.rep))
    if not pieces:
        pieces.append(move_basepoint(ctx.cover, an.reduced.f))
    m = relabel(pieces[0])
    for piece in pieces[1:]:
        m = pullback(m, piece)
    cert = Certificate(H.rank, H.generators, K.generators, g, f, m)
    if not verify_certificate(cert):
        raise AssertionError("constructed separator failed verification")
    return cert
