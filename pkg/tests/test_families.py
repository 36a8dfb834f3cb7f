from fractions import Fraction

import pytest

from fixicity.autsearch import are_isomorphic, automorphism_group
from fixicity.families import (
    SPORADIC_IDS,
    FamilyMember,
    Matching,
    SpecError,
    circulant,
    complete,
    complete_bipartite,
    derive_merge_matching,
    dw,
    dw_orientation,
    generalized_petersen,
    hypercube,
    kneser,
    merge_matching,
    moebius,
    parse_family_spec,
    prism,
    projective_incidence,
    px,
    px_fpr_tau,
    sdw,
    split_group,
    split_orientation,
    split_perm,
    split_px,
    sporadic,
    vec_px,
)
from fixicity.graph import (
    complement,
    is_automorphism,
    is_bipartite,
    is_connected,
    is_digraph_automorphism,
    is_k_regular,
)
from fixicity.perm import PermGroup, schreier_sims
from fixicity.symmetry import transitivity_profile

PX_PARAMS = [(r, s) for r in range(3, 9) for s in range(1, r)]


@pytest.mark.parametrize("r,s", PX_PARAMS)
def test_px_bundle_invariants(r, s):
    b = vec_px(r, s)
    assert b.n == r * 2**s == b.graph.n
    assert is_k_regular(b.graph, 4) and is_connected(b.graph)
    assert all(len(o) == 2 for o in b.digraph.out)
    assert all(len(i) == 2 for i in b.digraph.in_neighbors())
    for t in (*b.tau, b.rho):
        assert is_digraph_automorphism(b.digraph, t)
    assert is_automorphism(b.graph, b.sigma)
    assert not is_digraph_automorphism(b.digraph, b.sigma)
    assert b.rho.order() == r
    assert (b.K.order, b.Hplus.order, b.H.order) == (2**r, r * 2**r, r * 2 ** (r + 1))


@pytest.mark.parametrize("r,s", PX_PARAMS)
def test_sigma_block_action(r, s):
    b = vec_px(r, s)
    for x in range(r):
        image = sorted(b.sigma(v) for v in b.block(x))
        assert image == b.block(-x - s + 1)


@pytest.mark.parametrize("r,s", [(3, 1), (4, 2), (5, 2), (6, 3), (7, 4)])
def test_vertex_stabilisers_generate_k(r, s):
    b = vec_px(r, s)
    gens = [g for v in range(b.n) for g in b.Hplus.point_stabilizer(v).generators]
    assert schreier_sims(gens, degree=b.n).order == b.K.order


def test_px_small_cases():
    octahedron = complement(_perfect_matching(6))
    assert are_isomorphic(px(3, 1), octahedron)
    assert are_isomorphic(px(4, 1), complete_bipartite(4, 4))


def _perfect_matching(n):
    from fixicity.graph import from_edges

    return from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def test_px_range_errors():
    for r, s in [(2, 1), (5, 0), (5, 5)]:
        with pytest.raises(ValueError):
            vec_px(r, s)


@pytest.mark.parametrize("r,s", PX_PARAMS)
def test_px_fpr_tau_matches_bundle(r, s):
    assert vec_px(r, s).tau[0].fpr() == px_fpr_tau(r, s) == Fraction(r - s, r)


def test_px_fpr_boundary():
    assert px_fpr_tau(5, 2) == Fraction(3, 5)
    assert px_fpr_tau(7, 6) == Fraction(1, 7)
    assert px_fpr_tau(6, 4) == Fraction(1, 3)


# -- split and merge ---------------------------------------------------------------


def test_split_px_52():
    g = split_px(5, 2)
    assert g.n == 40 and is_k_regular(g, 3) and is_connected(g)
    b = vec_px(5, 2)
    t = split_perm(b.digraph, b.tau[0])
    assert t.num_fixed() == 24 and t.fpr() == b.tau[0].fpr()


@pytest.mark.parametrize("r,s", [(3, 1), (4, 3), (6, 2)])
def test_split_px_equals_split_orientation(r, s):
    assert split_px(r, s) == split_orientation(vec_px(r, s).digraph)


def test_split_requires_valence_two():
    from fixicity.graph import from_arcs

    with pytest.raises(ValueError):
        split_orientation(from_arcs(3, [(0, 1), (1, 2), (2, 0)]))


def test_split_action_of_h():
    b = vec_px(5, 2)
    S = split_group(b.digraph, b.H)
    g = split_px(5, 2)
    assert S.order == b.H.order
    assert all(is_automorphism(g, p) for p in S.generators)
    prof = transitivity_profile(g, S)
    assert prof.vertex_t and not prof.arc_t
    # orientation-reversing elements swap the two copies of every vertex
    assert split_perm(b.digraph, b.sigma).num_fixed() == 0


def test_split_perm_rejects_mixed():
    # C(4,1) is K_{4,4}; swapping (0,0) with (2,0) is an automorphism outside H
    from fixicity.perm import Permutation

    b = vec_px(4, 1)
    odd = Permutation.from_cycles(b.n, [(0, 4)])
    assert is_automorphism(b.graph, odd)
    with pytest.raises(ValueError):
        split_perm(b.digraph, odd)


@pytest.mark.parametrize("r,s", [(5, 2), (4, 1), (6, 3), (3, 2)])
def test_merge_inverts_split(r, s):
    b = vec_px(r, s)
    g = split_px(r, s)
    m = derive_merge_matching(g, split_group(b.digraph, b.H))
    assert are_isomorphic(merge_matching(g, m), b.graph)


def test_split_dw3_is_arc_transitive():
    # S(DW_3) is a cubic arc-transitive graph on 18 vertices, so the full
    # automorphism group has no invariant matching to contract
    g = sdw(3)
    assert transitivity_profile(g, automorphism_group(g)[0]).arc_t
    with pytest.raises(ValueError, match="arc-transitive"):
        derive_merge_matching(g, automorphism_group(g)[0])


@pytest.mark.parametrize("m", [4, 5, 6])
def test_merge_inverts_split_dw(m):
    g = sdw(m)
    M = derive_merge_matching(g, automorphism_group(g)[0])
    assert are_isomorphic(merge_matching(g, M), dw(m)[0])


def test_derive_rejects_arc_transitive():
    pet = sporadic("lambda4")
    with pytest.raises(ValueError, match="arc-transitive"):
        derive_merge_matching(pet, automorphism_group(pet)[0])


def test_merge_errors():
    g = split_px(3, 1)
    with pytest.raises(ValueError, match="not perfect"):
        merge_matching(g, Matching(((0, 1),)))
    with pytest.raises(ValueError, match="not an edge"):
        merge_matching(g, Matching(((0, 4),)))
    # contracting a perfect matching of K4 leaves a double edge between the pairs
    with pytest.raises(ValueError, match="same pair"):
        merge_matching(complete(4), Matching(((0, 1), (2, 3))))


# -- DW ----------------------------------------------------------------------------


def test_dw4():
    g, a = dw(4)
    assert (g.n, g.num_edges) == (12, 24)
    assert a.num_fixed() == 4 and a.fpr() == Fraction(1, 3)
    assert (a * a).is_identity() and is_automorphism(g, a)


@pytest.mark.parametrize("m", range(3, 9))
def test_dw_arc_transitive(m):
    g, a = dw(m)
    assert is_connected(g) and is_k_regular(g, 4)
    assert transitivity_profile(g, automorphism_group(g)[0]).arc_t
    assert sdw(m).n == 6 * m and is_k_regular(sdw(m), 3)


def test_dw4_has_twins():
    # (x, i) and (x + 2, i) share their neighbourhood when m = 4
    from fixicity.graph import twin_vertices

    g, _ = dw(4)
    assert frozenset((0, 6)) in twin_vertices(g)
    assert are_isomorphic(g, px(6, 1))


def test_dw_rejects_small():
    with pytest.raises(ValueError):
        dw(2)


# -- sporadics and standard graphs -------------------------------------------------

SPORADIC_SHAPE = {
    "psi1": (5, 4),
    "psi2": (10, 4),
    "psi3": (14, 4),
    "psi4": (26, 4),
    "psi5": (35, 4),
    "psi6": (70, 4),
    "lambda1": (4, 3),
    "lambda2": (6, 3),
    "lambda3": (8, 3),
    "lambda4": (10, 3),
    "lambda5": (14, 3),
    "lambda6": (20, 3),
}


@pytest.mark.parametrize("name", SPORADIC_IDS)
def test_sporadic_shape(name):
    g = sporadic(name)
    assert (g.n, g.valency()) == SPORADIC_SHAPE[name]
    assert is_connected(g)


def test_sporadic_relations():
    assert is_bipartite(sporadic("psi3"))
    # the Heawood graph is the bipartite complement of psi3 within the two parts
    psi3 = sporadic("psi3")
    from fixicity.graph import from_edges

    bc = from_edges(14, [(p, 7 + l) for p in range(7) for l in range(7) if not psi3.has_edge(p, 7 + l)])
    assert are_isomorphic(bc, sporadic("lambda5"))
    assert bc == projective_incidence(2)
    assert are_isomorphic(kneser(5, 2), sporadic("lambda4"))
    assert are_isomorphic(hypercube(3), sporadic("lambda3"))
    assert sporadic("Ψ5") == sporadic("psi5")


def test_sporadic_unknown():
    with pytest.raises(ValueError):
        sporadic("psi7")


def test_standard_graphs():
    assert prism(3).n == 6 and is_k_regular(prism(3), 3)
    assert are_isomorphic(moebius(2), complete(4))
    assert are_isomorphic(generalized_petersen(5, 2), sporadic("lambda4"))
    assert are_isomorphic(circulant(5, [1, 2]), complete(5))
    assert circulant(8, [1]).valency() == 2
    assert kneser(5, 2).labels[0] == "{0,1}"


@pytest.mark.parametrize(
    "call",
    [
        lambda: prism(2),
        lambda: moebius(1),
        lambda: circulant(6, [0, 1]),
        lambda: circulant(6, [6]),
        lambda: generalized_petersen(6, 3),
        lambda: kneser(3, 2),
        lambda: hypercube(0),
    ],
)
def test_parameter_errors(call):
    with pytest.raises(ValueError):
        call()


# -- spec grammar ------------------------------------------------------------------


def test_parse_family_spec():
    assert [m.name for m in parse_family_spec("px:3..4,1")] == ["px:3,1", "px:4,1"]
    assert len(parse_family_spec("px:3..5,1..4", skip_invalid=True)) == 2 + 3 + 4
    assert parse_family_spec("sporadic:psi3")[0].build().n == 14
    assert len(parse_family_spec("sporadic:all")) == 12
    assert parse_family_spec("circ:10,1,3")[0] == FamilyMember("circ", (10, 1, 3))


@pytest.mark.parametrize("bad", ["px", "px:3", "px:3,x", "foo:3", "px:5..3,1", "sporadic:psi9", "dw:2", "px:3..5,1..4"])
def test_parse_family_spec_errors(bad):
    with pytest.raises(SpecError):
        parse_family_spec(bad)


@pytest.mark.parametrize("r,s", [(r, s) for r in range(3, 7) for s in range(1, r)])
def test_split_preserves_fpr_on_hplus(r, s):
    b = vec_px(r, s)
    for x in b.Hplus.elements():
        assert split_perm(b.digraph, x).fpr() == x.fpr()
