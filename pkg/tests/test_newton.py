import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contclosure.newton import (
    BOUNDARY, IN_IDEAL, INTERIOR, OUTSIDE, build_polyhedron, closure_generators, epsilon_lp,
    fractional_power_bound, in_closure, locate, locate_by_facets, locate_by_lp, max_power_index,
    power_witness, supporting_normal,
)
from contclosure.poly import MonomialIdeal, NotPrimaryError

from oracles import box, fractional_power, oracle_closure_generators, random_primary_ideal


def facet_set(gens):
    return set(build_polyhedron(gens).facets)


def test_facets_of_small_ideals():
    assert facet_set([(3, 0), (0, 3)]) == {((1, 0), 0), ((0, 1), 0), ((1, 1), 3)}
    assert facet_set([(2, 0), (0, 5)]) == {((1, 0), 0), ((0, 1), 0), ((5, 2), 10)}
    assert facet_set([(3, 0), (2, 1), (0, 3)]) == {((1, 0), 0), ((0, 1), 0), ((1, 1), 3)}


def test_three_variable_facets():
    P = build_polyhedron([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert ((1, 1, 1), 2) in P.facets
    P.check()


def test_non_primary_polyhedron_has_coordinate_direction_facets():
    P = build_polyhedron([(2, 0), (1, 1)])
    P.check()
    assert ((0, 1), 0) in P.facets and ((1, 0), 1) in P.facets


@pytest.mark.parametrize("gens, tau, tag, eps", [
    ([(3, 0), (0, 3)], (2, 2), INTERIOR, Fraction(1, 2)),
    ([(2, 0), (0, 2)], (1, 1), BOUNDARY, 0),
    ([(2, 0), (0, 5)], (1, 3), INTERIOR, Fraction(1, 7)),
    ([(2, 0), (0, 5)], (1, 2), OUTSIDE, Fraction(-1, 7)),
    ([(2, 0), (0, 4)], (1, 2), BOUNDARY, 0),
    ([(5, 0, 0), (0, 5, 0), (0, 0, 3)], (4, 4, 0), INTERIOR, Fraction(3, 2)),
    ([(5, 0, 0), (0, 5, 0), (0, 0, 3)], (0, 0, 2), OUTSIDE, Fraction(-1)),
    ([(3, 0), (0, 3)], (1, 1), OUTSIDE, Fraction(-1, 2)),
])
def test_locate_examples(gens, tau, tag, eps):
    I = MonomialIdeal(gens)
    loc = locate(build_polyhedron(I), I, tau)
    assert loc.tag == tag
    assert loc.epsilon == eps


def test_locate_reports_ideal_members_and_tight_facets():
    I = MonomialIdeal([(2, 0), (0, 2)])
    P = build_polyhedron(I)
    assert locate(P, I, (3, 1)).tag == IN_IDEAL
    assert locate(P, I, (3, 1)).generator == (2, 0)
    assert locate(P, I, (1, 1)).tight == (((1, 1), 2),)
    out = locate(build_polyhedron([(3, 0), (0, 3)]), MonomialIdeal([(3, 0), (0, 3)]), (1, 1))
    assert out.separating == ((1, 1), 3)


@pytest.mark.parametrize("gens, expected", [
    ([(3, 0), (0, 3)], [(3, 0), (2, 2), (0, 3)]),
    ([(2, 0), (0, 2)], [(2, 0), (0, 2)]),
    ([(2, 0), (0, 5)], [(2, 0), (1, 3), (0, 5)]),
    ([(3, 0), (2, 1), (0, 3)], [(3, 0), (2, 1), (0, 3)]),
])
def test_closure_generator_examples(gens, expected):
    assert list(closure_generators(MonomialIdeal(gens)).generators) == expected


def test_closure_rejects_non_primary():
    with pytest.raises(NotPrimaryError):
        closure_generators(MonomialIdeal([(2, 0), (1, 1)]))


def test_one_variable_closure_is_the_ideal():
    assert closure_generators(MonomialIdeal([(4,)])).generators == ((4,),)


@pytest.mark.parametrize("gens, tau, n, theta, alpha", [
    ([(3, 0), (0, 3)], (2, 2), 3, 4, (2, 2)),
    ([(2, 0), (0, 5)], (1, 3), 10, 11, (5, 6)),
])
def test_power_witness_examples(gens, tau, n, theta, alpha):
    pw = power_witness(MonomialIdeal(gens), tau)
    assert (pw.n, pw.theta, pw.alpha) == (n, theta, alpha)
    assert pw.check(tau)


def test_power_witness_is_minimal_by_exhaustion():
    gens = ((2, 0), (0, 5))
    for n in range(1, 10):
        assert max_power_index(gens, (n, 3 * n))[0] <= n


def test_no_power_witness_on_the_boundary():
    assert power_witness(MonomialIdeal([(2, 0), (0, 2)]), (1, 1)) is None
    assert fractional_power_bound([(2, 0), (0, 2)], (1, 1)) == 1
    with pytest.raises(ValueError):
        power_witness(MonomialIdeal([(2, 0), (0, 2)]), (2, 1))


def test_supporting_normal_examples():
    P = build_polyhedron([(2, 0), (0, 2)])
    sn = supporting_normal(P, (1, 1))
    assert (sn.normal, sn.degree) == ((1, 1), 2)
    sn = supporting_normal(build_polyhedron([(2, 0), (0, 4)]), (1, 2))
    assert (sn.normal, sn.degree) == ((2, 1), 4)
    sn = supporting_normal(build_polyhedron([(6, 0, 0), (0, 4, 0), (0, 0, 3)]), (3, 2, 0))
    assert (sn.normal, sn.degree) == ((2, 3, 4), 12)
    with pytest.raises(ValueError):
        supporting_normal(P, (2, 2))


def test_supporting_normal_absent_without_positive_normal():
    # non-primary: the only facet through (1, 3) is x >= 1
    P = build_polyhedron([(2, 0), (1, 1)])
    loc = locate_by_facets(P, (1, 3))
    assert loc.tag == BOUNDARY and loc.tight == (((1, 0), 1),)
    assert supporting_normal(P, (1, 3)) is None


# randomized cross-checks

@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_polyhedron_is_consistent(seed):
    I = random_primary_ideal(random.Random(seed))
    build_polyhedron(I).check()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lp_route_matches_facet_route(seed):
    rng = random.Random(seed)
    I = random_primary_ideal(rng)
    P = build_polyhedron(I)
    pts = list(box(I))
    for x in rng.sample(pts, min(8, len(pts))):
        a, b = locate_by_facets(P, x), locate_by_lp(P.generators, x)
        assert (a.tag, a.epsilon) == (b.tag, b.epsilon)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_closure_matches_lattice_lp_oracle(seed):
    I = random_primary_ideal(random.Random(seed))
    assert closure_generators(I).generators == oracle_closure_generators(I)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_epsilon_weights_certify_the_location(seed):
    rng = random.Random(seed)
    I = random_primary_ideal(rng)
    x = rng.choice(list(box(I)))
    eps, lam = epsilon_lp(I.generators, x)
    if not any(x):
        assert eps is None
        return
    assert sum(lam) == 1 and min(lam) >= 0
    point = [sum(l * g[j] for l, g in zip(lam, I.generators)) for j in range(I.nvars)]
    assert all(x[j] - eps * (x[j] > 0) >= point[j] for j in range(I.nvars))
    assert float(fractional_power_bound(I.generators, x)) == pytest.approx(fractional_power(I.generators, x))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_power_witness_implies_interior(seed):
    rng = random.Random(seed)
    I = random_primary_ideal(rng, max_exp=5)
    P = build_polyhedron(I)
    for x in box(I):
        if I.contains(x):
            continue
        pw = power_witness(I, x, n_max=12)
        if pw is not None:
            assert pw.check(x)
            assert locate(P, I, x).tag == INTERIOR
        if locate(P, I, x).tag != INTERIOR:
            assert pw is None


def test_points_on_coordinate_hyperplanes_can_be_interior():
    # z1^4 z2^4 already lies in the closure of (z1^5, z2^5) in two variables
    I = MonomialIdeal([(5, 0, 0), (0, 5, 0), (0, 0, 3)])
    pw = power_witness(I, (4, 4, 0))
    assert (pw.n, pw.theta) == (3, 4)
    C = closure_generators(I)
    assert C.contains((4, 4, 0)) and (3, 3, 0) in C.generators


def test_in_closure_agrees_with_generators():
    I = MonomialIdeal([(2, 0), (0, 5)])
    C = closure_generators(I)
    for x in box(I):
        assert in_closure(I, x) == C.contains(x)
