import random

import pytest
from hypothesis import given, settings, strategies as st

from dcoset.completion import complete
from dcoset.errors import AlphabetMismatch, Disconnected
from dcoset.graph import (
    LabeledGraph,
    P_END,
    add_path,
    basis,
    canonical_form,
    coset_orbit,
    fold,
    is_complete,
    is_member,
    move_basepoint,
    pullback,
    read,
    recognized_basis,
    relabel,
    rose,
    spanning_tree,
    subgroup_core,
    to_dot,
    trim,
    wedge,
    x0_component,
)
from dcoset.words import concat, invert, parse

from helpers import all_reduced_words, products, random_gens, random_word, short_products

a, b = 1, 2
A, B = -1, -2


def P(text, rank=2):
    return parse(text, rank)


def core(*gens, rank=2):
    return subgroup_core([P(w, rank) for w in gens], rank)


# -- fold ---------------------------------------------------------------


def test_fold_duplicate_loops():
    g = fold(wedge([(a,), (a,)], 2))
    assert g.n == 1 and g.edges == ((a, 0, 0),)


def test_fold_duplicate_generators():
    g = fold(wedge([(a, b), (a, b)], 2))
    assert g.n == 2
    assert g.edges == ((a, 0, 1), (b, 1, 0))
    # recognized words of length <= 4 are unchanged by the duplicate
    single = fold(wedge([(a, b)], 2))
    for w in all_reduced_words(2, 4):
        assert (read(g, 0, w) == 0) == (read(single, 0, w) == 0)


def test_fold_idempotent():
    g = core("aab", "bAb").core
    assert canonical_form(fold(g)) == canonical_form(g)


def test_fold_carries_marks():
    g = LabeledGraph(2, 3, ((a, 0, 1), (a, 0, 2)), 0, (("q", 2),))
    h = fold(g)
    assert h.n == 2 and h.mark("q") == 1


# -- cores --------------------------------------------------------------


def test_core_a2_b():
    h = core("aa", "b")
    assert h.core.n == 2
    assert h.core.edges == ((a, 0, 1), (a, 1, 0), (b, 0, 0))
    for w in all_reduced_words(2, 4):
        assert is_member(h, w) == (w in products(h.generators, 8))


def test_core_trivial_and_full():
    assert core().core == LabeledGraph(2, 1, ())
    assert core("a", "b").core == rose(2)


def test_core_tolerates_degenerate_generators():
    h = subgroup_core([(), (a, b, B, a), (a,)], 2)
    assert canonical_form(h.core) == canonical_form(core("a").core)
    # not cyclically reduced: the basepoint sits at the end of a b-spur
    h = core("Bab")
    assert h.core.n == 2 and h.core.degree(0) == 1
    assert is_member(h, (B, a, a, b)) and not is_member(h, (a,))


# -- add_path / trim ----------------------------------------------------


def test_add_path_worked_example():
    g = add_path(core("a").core, 0, (b, a))
    assert g.n == 3
    assert g.edges == ((a, 0, 0), (a, 1, 2), (b, 0, 1))
    assert g.mark(P_END) == 2


def test_add_path_reuses_edges():
    h = core("aa", "b").core
    g = add_path(h, 0, (a,))
    assert g.edges == h.edges and g.mark(P_END) == 1


def test_add_empty_path():
    h = core("aa", "b").core
    g = add_path(h, 0, ())
    assert g.edges == h.edges and g.mark(P_END) == 0


def test_trim_removes_cancellation_spur():
    g = trim(fold(wedge([(a, b, B, a)], 2)))
    assert canonical_form(g) == canonical_form(core("aa").core)


def test_trim_hanging_edge():
    g = LabeledGraph(2, 2, ((a, 0, 0), (b, 0, 1)))
    assert trim(g).edges == ((a, 0, 0),)
    assert trim(g, {1}).edges == g.edges
    marked = LabeledGraph(2, 2, ((a, 0, 0), (b, 0, 1)), 0, ((P_END, 1),))
    assert trim(marked) == marked


# -- read / membership --------------------------------------------------


def test_read_examples():
    h = core("aa", "b").core
    assert read(h, 0, (a,)) == 1
    assert read(h, 0, (b, A)) == 1
    assert read(h, 0, ()) == 0
    assert read(h, 1, (b,)) is None


def test_is_member_examples():
    h = core("aa", "b")
    assert not is_member(h, (a, b, a))
    assert (a, b, a) not in short_products(h.generators, 3)
    assert is_member(h, (a, a, B))
    assert is_member(core("ab", "ba"), ())


def test_is_complete():
    assert is_complete(rose(3))
    assert not is_complete(core("aa", "b").core)
    assert is_complete(complete(core("aa", "b").core).cover)


def test_membership_matches_products():
    rng = random.Random(11)
    checked = 0
    for _ in range(60):
        rank = rng.randint(1, 3)
        gens = random_gens(rng, rank, 4, 6)
        reachable = products(gens, 12, limit=200_000)
        if reachable is None:
            continue
        h = subgroup_core(gens, rank)
        for w in all_reduced_words(rank, 6 if rank < 3 else 5):
            assert is_member(h, w) == (w in reachable), (gens, w)
        checked += 1
    assert checked >= 40


def test_membership_sound_for_large_subgroups():
    rng = random.Random(12)
    for _ in range(30):
        gens = random_gens(rng, 2, 4, 6, min_gens=3)
        h = subgroup_core(gens, 2)
        for w in products(gens, 7):
            assert is_member(h, w)


# -- components ---------------------------------------------------------


def test_x0_component():
    g = add_path(core("a").core, 0, (b, a))
    assert x0_component(g, 0, {b}) == {0, 1}
    assert x0_component(g, 0, {a, b}) == {0, 1, 2}
    assert x0_component(g, 2, set()) == {2}


# -- pullback -----------------------------------------------------------


def test_pullback_analytic():
    assert canonical_form(pullback(core("a").core, core("aa").core)) == canonical_form(core("aa").core)
    assert canonical_form(pullback(core("a").core, core("b").core)) == canonical_form(core().core)
    g = core("abA", "bb").core
    assert canonical_form(pullback(g, rose(2))) == canonical_form(g)


def test_pullback_rank_mismatch():
    with pytest.raises(AlphabetMismatch):
        pullback(rose(2), rose(3))


def test_pullback_of_covers_is_complete():
    m1 = complete(core("aa", "b").core).cover
    m2 = complete(add_path(core("a").core, 0, (b, a))).cover
    p = pullback(m1, m2)
    assert is_complete(p)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_pullback_intersects(rng):
    ga = subgroup_core(random_gens(rng, 2, 3, 5), 2)
    gb = subgroup_core(random_gens(rng, 2, 3, 5), 2)
    pb = subgroup_core(recognized_basis(pullback(ga.core, gb.core)), 2)
    for w in all_reduced_words(2, 5):
        assert is_member(pb, w) == (is_member(ga, w) and is_member(gb, w))


# -- trees and bases ----------------------------------------------------


def test_spanning_tree_examples():
    cyc = core("aa").core
    assert spanning_tree(cyc, 0) == {(a, 0, 1)}
    assert spanning_tree(rose(2), 0) == frozenset()
    h = core("aa", "b").core
    cover = complete(h).cover
    assert spanning_tree(cover, 0, prefer=h.edges) == {(a, 0, 1)}


def test_spanning_tree_disconnected():
    with pytest.raises(Disconnected):
        spanning_tree(LabeledGraph(1, 2, ()), 0)


def test_basis_examples():
    cover = complete(core("aa", "b").core).cover
    words = basis(cover, {(a, 0, 1)})
    assert set(words) == {(b,), (a, b, A), (a, a)}
    assert basis(LabeledGraph(2, 1, ((a, 0, 0),)), set()) == [(a,)]
    assert basis(LabeledGraph(2, 2, ((a, 0, 1),)), {(a, 0, 1)}) == []


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_basis_regenerates_subgroup(rng):
    rank = rng.randint(1, 3)
    h = subgroup_core(random_gens(rng, rank, 4, 6), rank)
    g = h.core
    words = recognized_basis(g)
    assert len(words) == len(g.edges) - g.n + 1
    rebuilt = subgroup_core(words, rank)
    assert canonical_form(rebuilt.core) == canonical_form(g)
    assert all(is_member(rebuilt, w) for w in h.generators)
    assert all(is_member(h, w) for w in words)


# -- covers and orbits --------------------------------------------------


@pytest.fixture
def worked_cover():
    return complete(add_path(core("a").core, 0, (b, a))).cover


def test_coset_orbit_examples(worked_cover):
    assert coset_orbit(worked_cover, {0}, [(a,)]) == {0}
    assert coset_orbit(worked_cover, {0}, [(b,)]) == {0, 1}
    assert coset_orbit(worked_cover, {2}, []) == {2}
    assert coset_orbit(worked_cover, {0}, [(a,), (b,)]) == {0, 1, 2}


def test_move_basepoint(worked_cover):
    m = worked_cover
    assert move_basepoint(m, ()) == m
    back = move_basepoint(move_basepoint(m, (b, a)), (A, B))
    assert back.basepoint == m.basepoint


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_move_basepoint_conjugates(rng):
    h = subgroup_core(random_gens(rng, 2, 3, 4), 2)
    m = complete(h.core).cover
    w = random_word(rng, 2, 4)
    moved = move_basepoint(m, w)
    for gen in recognized_basis(m):
        u = concat(w, gen, invert(w))
        assert read(moved, moved.basepoint, u) == moved.basepoint


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_cover_right_action(rng):
    m = complete(subgroup_core(random_gens(rng, 2, 3, 4), 2).core).cover
    letters = [(x,) for x in range(1, 3)]
    assert coset_orbit(m, {0}, letters) == set(range(m.n))
    for x in (a, b):
        targets = sorted(v for _, _, v in (e for e in m.edges if e[0] == x))
        assert targets == list(range(m.n))
    u, w = random_word(rng, 2, 5), random_word(rng, 2, 5)
    for v in range(m.n):
        assert read(m, v, concat(u, w)) == read(m, read(m, v, u), w)


# -- canonical form -----------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_canonical_form_ignores_vertex_names(rng):
    g = subgroup_core(random_gens(rng, 3, 4, 5), 3).core
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = LabeledGraph(g.rank, g.n, tuple((x, perm[u], perm[v]) for x, u, v in g.edges), perm[g.basepoint])
    assert canonical_form(h) == canonical_form(g)
    assert relabel(h) == g


def test_canonical_form_distinguishes():
    assert canonical_form(core("a").core) != canonical_form(core("b").core)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_fold_confluence(rng):
    gens = random_gens(rng, 2, 4, 6)
    ref = canonical_form(fold(wedge(gens, 2)))
    for _ in range(5):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        w = wedge(shuffled, 2)
        order = list(range(len(w.edges)))
        rng.shuffle(order)
        assert canonical_form(fold(w, order)) == ref


# -- serialization ------------------------------------------------------


def test_json_round_trip():
    g = add_path(core("aa", "b").core, 0, (b, a))
    assert LabeledGraph.from_json(g.to_json()) == g
    data = g.to_json()
    data["edges"] = list(reversed(data["edges"]))
    assert LabeledGraph.from_json(data) == g


def test_dot():
    text = to_dot(add_path(core("a").core, 0, (b, a)))
    assert text.startswith("digraph")
    assert '0 -> 1 [label="b"]' in text
    assert "doublecircle" in text
    assert "p_end" in text


def test_invalid_graphs():
    with pytest.raises(ValueError):
        LabeledGraph(2, 1, ((3, 0, 0),))
    with pytest.raises(ValueError):
        LabeledGraph(2, 1, (), basepoint=1)


def test_random_folded_helper_is_folded():
    from helpers import random_folded_graph

    rng = random.Random(0)
    for _ in range(50):
        assert random_folded_graph(rng, 3, 12).is_folded
