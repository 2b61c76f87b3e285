import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_tail, closure, direct_product_growth, free_spheres, reduced_writings, z_equal
from selfsim.fixtures import cycle, path_graph
from selfsim.graphs import VertexGraph
from selfsim.vertex_groups import FreeGroup
from selfsim.words import (IDENTITY, ball, format_word, invert, multiply, normal_form, other_writing, parse_normal,
                           parse_word, project, spheres, tail)

C4 = cycle(4)
C5 = cycle(5)
P3 = path_graph(3)


def adj(G):
    return {v: set(G.adj[v]) for v in G.vertices}


def test_examples():
    assert normal_form(C4, ()) == IDENTITY
    assert normal_form(C4, ((2, 1), (1, 1))) == ((1, 1), (2, 1))
    assert normal_form(C4, ((1, 1), (1, -1))) == IDENTITY
    assert multiply(C4, (), ((3, 2),)) == ((3, 2),)
    assert multiply(C4, ((1, 1),), ((1, -1),)) == IDENTITY
    assert multiply(P3, ((3, 1),), ((1, 1),)) == ((3, 1), (1, 1))
    assert invert(C4, ()) == () and invert(C4, ((1, 2),)) == ((1, -2),)
    assert invert(C4, ((1, 1), (2, 1))) == ((1, -1), (2, -1))
    assert tail(C4, ()) == frozenset()
    assert tail(C4, ((1, 1), (2, 1))) == {1, 2}
    assert tail(C4, ((1, 1), (3, 1))) == {3}


def test_examples_against_closure():
    # the normal form is one of the reduced writings of the input
    for w in [((2, 1), (1, 1)), ((3, 1), (1, 1)), ((1, 1), (3, 1), (1, -1))]:
        assert normal_form(C4, w) in reduced_writings(adj(C4), w)
    assert brute_tail(adj(C4), ((1, 1), (2, 1))) == {1, 2}
    assert brute_tail(adj(C4), ((1, 1), (3, 1))) == {3}


def test_project():
    assert project(C4, ((2, 1),), 1) == 0
    assert project(C4, ((1, 2), (3, 1), (1, 3)), 1) == 5
    G = VertexGraph.build([1, 2], [], {2: FreeGroup(2)})
    F = G.groups[2]
    w = ((2, F.parse("a")), (1, 1), (2, F.parse("b")))
    assert F.format(project(G, w, 2)) == "ab"


def test_ball_sizes():
    assert ball(C4, 0) == [IDENTITY]
    Z = VertexGraph.build([1], [])
    assert sorted(x for ((_, x),) in ball(Z, 3)[1:]) == [-3, -2, -1, 1, 2, 3]
    assert len(ball(C4, 2)) == direct_product_growth(free_spheres(2, 2), free_spheres(2, 2), 2) == 49
    assert len(ball(C4, 3)) == direct_product_growth(free_spheres(2, 3), free_spheres(2, 3), 3)


def test_ball_of_free_product_vertex_counts():
    # two non-adjacent Z vertices generate F2
    G = VertexGraph.build([1, 2], [])
    assert len(ball(G, 4)) == sum(free_spheres(2, 4))


def test_spheres_distances_match_ball_order():
    d = spheres(C5, 3)
    assert set(d) == set(ball(C5, 3))
    assert all(d[w] <= sum(abs(x) for _, x in w) for w in d)


def test_parse_and_format_round_trip():
    w = parse_normal(C4, "2:+1 1:-2 3:+1")
    assert parse_normal(C4, format_word(C4, w)) == w
    with pytest.raises(ValueError):
        parse_word(C4, "9:+1")
    with pytest.raises(ValueError):
        parse_word(C4, "oops")


def test_other_writing_is_same_element():
    rng = random.Random(3)
    for _ in range(200):
        w = _random_word(rng, C5, 6)
        g = normal_form(C5, w)
        alt = other_writing(C5, g)
        assert normal_form(C5, alt) == g
        assert alt in reduced_writings(adj(C5), g)


def _random_word(rng, G, n):
    return tuple((rng.choice(G.vertices), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, n)))


syllables5 = st.tuples(st.sampled_from([1, 2, 3, 4, 5]), st.integers(-3, 3))
words5 = st.lists(syllables5, max_size=6).map(tuple)


@settings(max_examples=150, deadline=None)
@given(words5)
def test_normal_form_is_reduced_writing(w):
    assert normal_form(C5, w) in reduced_writings(adj(C5), w)


@settings(max_examples=150, deadline=None)
@given(words5, words5, words5)
def test_group_laws(a, b, c):
    a, b, c = (normal_form(C5, x) for x in (a, b, c))
    assert multiply(C5, multiply(C5, a, b), c) == multiply(C5, a, multiply(C5, b, c))
    assert multiply(C5, a, invert(C5, a)) == IDENTITY
    assert multiply(C5, IDENTITY, a) == a == multiply(C5, a, IDENTITY)


@settings(max_examples=100, deadline=None)
@given(words5)
def test_tail_is_clique_and_matches_closure(w):
    g = normal_form(C5, w)
    t = tail(C5, g)
    assert C5.is_clique(t)
    assert t == brute_tail(adj(C5), w)


def test_closure_oracle_sanity():
    mul = lambda v, x, y: x + y  # noqa: E731
    is_id = lambda v, x: x == 0  # noqa: E731
    c = closure(adj(C4), mul, is_id, ((1, 1), (2, 1)))
    assert ((2, 1), (1, 1)) in c and () not in c
    assert z_equal(adj(C4), ((1, 1), (2, 1)), ((2, 1), (1, 1)))
    assert not z_equal(adj(C4), ((1, 1), (3, 1)), ((3, 1), (1, 1)))
