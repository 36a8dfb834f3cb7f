import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixicity.autsearch import are_isomorphic
from fixicity.families import complete, complete_bipartite, hypercube, kneser, px, sporadic, vec_px
from fixicity.graph import (
    FormatError,
    arcs,
    bipartite_double_cover,
    digraph6_decode,
    digraph6_encode,
    from_arcs,
    from_edges,
    graph6_decode,
    graph6_encode,
    is_automorphism,
    is_bipartite,
    is_connected,
    is_k_regular,
    read_graph6_lines,
    reverse,
    twin_vertices,
    two_arcs,
    underlying_graph,
    apply_perm,
)
from fixicity.perm import Permutation

from conftest import random_graph, to_nx


def test_from_edges_basics():
    tri = from_edges(3, [(0, 1), (1, 2), (0, 2), (2, 0)])
    assert tri.num_edges == 3
    assert from_edges(2, []).num_edges == 0
    k5 = complete(5)
    assert k5.num_edges == 10 and is_k_regular(k5, 4)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 0)]])
def test_from_edges_rejects(edges):
    with pytest.raises(ValueError):
        from_edges(3, edges)


def test_connectivity_and_regularity():
    assert is_connected(px(3, 1)) and is_k_regular(px(3, 1), 4)
    two_triangles = from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_connected(two_triangles)
    assert is_k_regular(sporadic("lambda4"), 3)


def test_arc_counts():
    tri = complete(3)
    assert len(arcs(tri)) == 6 and len(two_arcs(tri)) == 6
    edge = complete(2)
    assert len(arcs(edge)) == 2 and len(two_arcs(edge)) == 0
    pet = sporadic("lambda4")
    assert len(arcs(pet)) == 30 and len(two_arcs(pet)) == 60


def test_double_cover_examples():
    assert are_isomorphic(bipartite_double_cover(sporadic("lambda4")), sporadic("lambda6"))
    assert are_isomorphic(bipartite_double_cover(kneser(7, 3)), sporadic("psi6"))
    assert are_isomorphic(bipartite_double_cover(complete(4)), hypercube(3))


def test_double_cover_labels():
    g = kneser(5, 2)
    dc = bipartite_double_cover(g)
    assert dc.labels is not None and g.labels[0] in dc.labels[0]


def test_double_cover_properties(corpus):
    for e in corpus:
        g = e.graph
        if g.n > 300:
            continue
        dc = bipartite_double_cover(g)
        assert is_bipartite(dc)
        assert dc.valency() == g.valency()
        assert is_connected(dc) == (is_connected(g) and not is_bipartite(g))


def test_is_automorphism():
    b = vec_px(5, 2)
    assert is_automorphism(b.graph, Permutation.identity(b.n))
    assert is_automorphism(b.graph, b.tau[0])
    pet = sporadic("lambda4")
    bad = next(
        Permutation.from_cycles(10, [(u, v)])
        for u in range(10)
        for v in range(u + 1, 10)
        if not is_automorphism(pet, Permutation.from_cycles(10, [(u, v)]))
    )
    assert apply_perm(pet, bad) != pet
    with pytest.raises(ValueError):
        is_automorphism(pet, Permutation.identity(4))


def test_twins():
    assert len(twin_vertices(complete_bipartite(3, 3))) == 6
    assert twin_vertices(sporadic("lambda4")) == set()
    g = px(5, 1)
    twins = twin_vertices(g)
    assert all(frozenset((2 * x, 2 * x + 1)) in twins for x in range(5))


def test_underlying_and_reverse():
    d = vec_px(5, 1).digraph
    u = underlying_graph(d)
    assert u == px(5, 1) and is_k_regular(u, 4)
    both = from_arcs(2, [(0, 1), (1, 0)])
    assert underlying_graph(both).num_edges == 1
    assert reverse(reverse(d)) == d


# -- graph6 ------------------------------------------------------------------------


def test_graph6_examples():
    assert graph6_encode(complete(3)) == "Bw"
    assert graph6_encode(from_edges(1, [])) == "@"


@pytest.mark.parametrize("n", [1, 2, 5, 40, 62, 63, 64, 100, 258, 300])
def test_graph6_matches_networkx(n):
    rng = random.Random(n)
    g = random_graph(n, 0.3, rng)
    expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert graph6_encode(g) == expected
    assert graph6_decode(expected) == g


@pytest.mark.parametrize("bad", ["", "Bx", "Bw?", "B", "~??", "C~~~", "\x7fabc", ":Bw", "&Bw"])
def test_graph6_rejects(bad):
    with pytest.raises(FormatError):
        graph6_decode(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.floats(0, 1), st.integers(0, 2**32))
def test_graph6_round_trip_random(n, prob, seed):
    g = random_graph(n, prob, random.Random(seed))
    s = graph6_encode(g)
    assert graph6_decode(s) == g
    assert graph6_encode(graph6_decode(s)) == s


def test_digraph6_round_trip():
    d = vec_px(4, 2).digraph
    s = digraph6_encode(d)
    assert s.startswith("&")
    assert digraph6_decode(s) == d
    assert digraph6_encode(from_arcs(3, [(0, 1)])) == "&BO?"


def test_read_graph6_lines_reports_line():
    rows = read_graph6_lines(["# header", "Bw", "", "@"])
    assert [g.n for _, g in rows] == [3, 1]
    with pytest.raises(FormatError, match="line 2"):
        read_graph6_lines(["Bw", "Bx"])


def test_corpus_graph6_round_trip(corpus):
    for e in corpus:
        s = graph6_encode(e.graph)
        assert graph6_encode(graph6_decode(s)) == s
