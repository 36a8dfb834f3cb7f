import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixicity.families import vec_px
from fixicity.perm import (
    Capped,
    Permutation,
    closure_elements,
    compose,
    conjugacy_class,
    fixed_points,
    fpr,
    lemma1_check,
    membership,
    orbit_of,
    orbits,
    point_stabilizer,
    schreier_sims,
    suborbit_fpr_identity,
)


def perms(max_degree=7):
    return st.integers(1, max_degree).flatmap(lambda n: st.permutations(range(n)).map(Permutation))


def sym(n):
    return schreier_sims([Permutation.from_cycles(n, [(0, 1)]), Permutation(list(range(1, n)) + [0])])


# -- permutations ------------------------------------------------------------------


def test_compose_right_action():
    p = Permutation.from_cycles(3, [(0, 1, 2)])
    q = Permutation.from_cycles(3, [(0, 1)])
    assert compose(p, q) == Permutation.from_cycles(3, [(1, 2)])
    assert compose(q, q).is_identity()
    assert compose(Permutation.identity(3), p) == p


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


@pytest.mark.parametrize("images", [[0, 0, 1], [1, 2, 3], [], [-1, 0]])
def test_invalid_permutation(images):
    with pytest.raises(ValueError):
        Permutation(images)


def test_fixed_points_and_fpr():
    e = Permutation.identity(5)
    assert len(fixed_points(e)) == 5 and fpr(e) == 1
    t = Permutation.from_cycles(4, [(1, 3)])
    assert fixed_points(t) == {0, 2}
    assert fpr(t) == Fraction(1, 2)
    assert isinstance(fpr(t), Fraction)


def test_tau0_fixed_points_on_px52():
    b = vec_px(5, 2)
    assert b.tau[0].num_fixed() == 12
    assert b.tau[0].fpr() == Fraction(3, 5)


@given(perms())
def test_inverse_law(p):
    assert len(fixed_points(compose(p, p.inverse()))) == p.degree
    assert (p * p.inverse()).is_identity()


@given(perms(), st.data())
def test_associativity_and_conjugation(p, data):
    n = p.degree
    q = data.draw(st.permutations(range(n)).map(Permutation))
    r = data.draw(st.permutations(range(n)).map(Permutation))
    assert (p * q) * r == p * (q * r)
    assert p.conjugate(q) == q.inverse() * p * q
    assert p.commutator(q) == p.inverse() * q.inverse() * p * q


@given(perms())
def test_order_and_cycles(p):
    assert (p ** p.order()).is_identity()
    assert sum(len(c) for c in p.cycles()) == len(p.support())


def test_json_round_trip():
    p = Permutation([2, 0, 1])
    assert Permutation(p.to_json()) == p


# -- groups ------------------------------------------------------------------------


def test_sym4_order():
    G = schreier_sims([Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(0, 1, 2, 3)])])
    assert G.order == 24
    assert point_stabilizer(G, 0).order == 6
    assert all(membership(G, Permutation(list(p))) for p in __import__("itertools").permutations(range(4)))


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_px_group_orders(r):
    b = vec_px(r, 1)
    assert schreier_sims(b.tau).order == 2**r
    assert schreier_sims((*b.tau, b.rho, b.sigma)).order == r * 2 ** (r + 1)


def test_px_h_order_matches_closure():
    b = vec_px(5, 1)
    gens = (*b.tau, b.rho, b.sigma)
    assert len(closure_elements(gens)) == 320 == schreier_sims(gens).order


def test_membership_examples():
    b = vec_px(5, 1)
    assert not membership(b.Hplus, b.sigma)
    assert membership(b.H, b.sigma)
    assert membership(b.K, b.rho**5)
    assert membership(b.K, Permutation.identity(b.n))


def test_membership_degree_mismatch():
    with pytest.raises(ValueError):
        membership(sym(4), Permutation.identity(5))


def test_known_order_mismatch_raises():
    with pytest.raises(ValueError):
        schreier_sims([Permutation.from_cycles(3, [(0, 1)])], order=6)


def test_orbits_of_k():
    b = vec_px(5, 2)
    orbs = orbits(b.K)
    assert len(orbs) == 5 and all(len(o) == 4 for o in orbs)
    assert [sorted(o) for o in orbs] == [b.block(x) for x in range(5)]


def test_trivial_group_orbits():
    G = schreier_sims([], degree=4)
    assert G.order == 1
    assert orbits(G) == [[0], [1], [2], [3]]
    assert orbit_of(G, 2) == {2}
    with pytest.raises(ValueError):
        orbit_of(G, 7)


def test_semiregular_stabiliser_trivial():
    G = schreier_sims([Permutation([1, 2, 3, 4, 5, 0])])
    assert point_stabilizer(G, 3).order == 1


def test_elements_and_cap():
    assert len(list(sym(3).elements(cap=10))) == 6
    with pytest.raises(Capped):
        list(vec_px(5, 1).K.elements(cap=10))


def test_prime_order_elements_cyclic6():
    G = schreier_sims([Permutation([1, 2, 3, 4, 5, 0])])
    orders = sorted(p.order() for p in G.prime_order_elements())
    assert orders == [2, 3, 3]


def test_enumeration_deterministic():
    G = vec_px(4, 2).H
    assert [p.images for p in G.elements()] == [p.images for p in G.elements()]


def test_conjugacy_classes():
    S3 = sym(3)
    c = conjugacy_class(S3, Permutation.from_cycles(3, [(0, 1)]))
    assert (c.size, c.centralizer_order) == (3, 2)
    assert conjugacy_class(S3, Permutation.identity(3)).size == 1
    b = vec_px(4, 1)
    c = conjugacy_class(b.K, b.tau[0])
    assert (c.size, c.centralizer_order) == (1, 16)
    with pytest.raises(ValueError):
        conjugacy_class(b.K, b.rho)


def _random_group(rng):
    n = rng.randint(2, 7)
    gens = [Permutation(rng.sample(range(n), n)) for _ in range(rng.randint(1, 3))]
    return schreier_sims(gens, degree=n), gens


@pytest.mark.parametrize("seed", range(40))
def test_schreier_sims_matches_closure(seed):
    G, gens = _random_group(random.Random(seed))
    elems = closure_elements(gens)
    assert G.order == len(elems)
    assert {p for p in G.elements()} == elems
    for w in range(G.degree):
        assert len(G.orbit_of(w)) * G.point_stabilizer(w).order == G.order
    for x in list(elems)[:5]:
        c = G.conjugacy_class(x)
        assert c.size * c.centralizer_order == G.order
        brute = {x.conjugate(y) for y in elems}
        assert c.size == len(brute)


# -- fixed-point identities --------------------------------------------------------


def test_suborbit_identity_examples():
    S3 = sym(3)
    assert suborbit_fpr_identity(S3, S3, Permutation.from_cycles(3, [(0, 1)]), 2) == (Fraction(1, 3), Fraction(1, 3))
    assert suborbit_fpr_identity(S3, S3, Permutation.identity(3), 0) == (1, 1)
    b = vec_px(4, 1)
    omega = min(b.tau[0].fixed_points())
    lhs, rhs = suborbit_fpr_identity(b.H, b.K, b.tau[0], omega)
    assert lhs == rhs


def test_suborbit_identity_preconditions():
    b = vec_px(5, 1)
    with pytest.raises(ValueError):
        suborbit_fpr_identity(b.H, b.Hplus.point_stabilizer(0), b.tau[0], 4)  # not normal
    with pytest.raises(ValueError):
        suborbit_fpr_identity(b.H, b.K, b.rho, 0)  # rho moves 0


def test_lemma1_examples():
    b = vec_px(5, 1)
    omega = min(b.tau[0].fixed_points())
    v = lemma1_check(b.H, b.K, b.tau[0], omega)
    assert v.hypothesis and v.conclusion and v.index == 1
    e = lemma1_check(b.H, b.K, Permutation.identity(b.n), 0)
    assert e.hypothesis and e.conclusion and e.fpr_orbit == 1


def test_lemma1_semiregular_normal_subgroup():
    # X = <rotation> is semiregular and normalised by the reflection g
    n = 7
    rot = Permutation([(i + 1) % n for i in range(n)])
    refl = Permutation([(-i) % n for i in range(n)])
    G = schreier_sims([rot, refl])
    X = schreier_sims([rot])
    v = lemma1_check(G, X, refl, 0)
    assert v.hypothesis and v.conclusion


def test_lemma1_cap():
    b = vec_px(5, 1)
    with pytest.raises(Capped):
        lemma1_check(b.H, b.K, b.tau[0], 4, cap=3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_suborbit_identity_random(seed):
    rng = random.Random(seed)
    X, _ = _random_group(rng)
    Y = X.normal_closure([X.random_element(rng)])
    omega = rng.randrange(X.degree)
    x = X.point_stabilizer(omega).random_element(rng)
    lhs, rhs = suborbit_fpr_identity(X, Y, x, omega)
    assert lhs == rhs
