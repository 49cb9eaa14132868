import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contclosure.certificates import replay_equal_degree, replay_monomial
from contclosure.closure import (
    AXES, CONTINUOUS, INTEGRAL, INVALID, MEMBER, NOT_MEMBER, UNDECIDED, VALID_CONCLUSIVE,
    VALID_INCONCLUSIVE, equal_degree_membership, evaluation_injective, monomial_membership,
    monomial_power_representation, monomials_of_degree, normalize_kind, principal_lattice_points,
    verify_power_representation,
)
from contclosure.grammar import parse_polynomial
from contclosure.newton import BOUNDARY, INTERIOR, build_polyhedron, locate
from contclosure.poly import MonomialIdeal, NotPrimaryError, Polynomial

from oracles import box, oracle_in_closure, oracle_in_hull, random_equal_degree_instance, random_primary_ideal

NAMES = ["z", "w"]


def poly(text, names=NAMES):
    return parse_polynomial(text, names)


def test_kind_aliases():
    assert normalize_kind("cont") == CONTINUOUS
    assert normalize_kind("ax") == AXES
    assert normalize_kind("integral") == INTEGRAL
    with pytest.raises(ValueError):
        normalize_kind("tight")


def test_principal_lattice_points_are_poised():
    for m in (1, 2, 3):
        for d in range(1, 5):
            es = principal_lattice_points(m, d)
            assert es.size == len([a for k in range(d + 1) for a in monomials_of_degree(m, k)])
            assert evaluation_injective(es.points, m, d)
    assert not evaluation_injective([(0, 0), (1, 0), (2, 0)], 2, 1)


@pytest.mark.parametrize("gens, tau, kind, result", [
    ([(3, 0), (0, 3)], (2, 2), CONTINUOUS, MEMBER),
    ([(3, 0), (0, 3)], (2, 2), AXES, MEMBER),
    ([(3, 0), (0, 3)], (1, 1), CONTINUOUS, NOT_MEMBER),
    ([(2, 0), (0, 2)], (1, 1), INTEGRAL, MEMBER),
    ([(2, 0), (0, 2)], (1, 1), AXES, NOT_MEMBER),
    ([(2, 0), (0, 2)], (1, 1), CONTINUOUS, NOT_MEMBER),
    ([(3, 0), (2, 1), (0, 3)], (1, 2), CONTINUOUS, NOT_MEMBER),
    ([(3, 0), (2, 1), (0, 3)], (1, 2), INTEGRAL, MEMBER),
    ([(2, 0), (0, 5)], (1, 3), CONTINUOUS, MEMBER),
    ([(2, 0), (0, 5)], (3, 0), CONTINUOUS, MEMBER),
])
def test_monomial_verdict_examples(gens, tau, kind, result):
    v = monomial_membership(MonomialIdeal(gens), tau, kind)
    assert v.result == result
    assert replay_monomial(gens, tau, kind, v.result, v.certificate).ok


def test_boundary_certificate_uses_normal_and_fill():
    v = monomial_membership(MonomialIdeal([(2, 0), (0, 2)]), (1, 1), AXES)
    cert = v.certificate
    assert cert["type"] == "BoundaryExclusion"
    assert cert["normal"] == [1, 1] and cert["degree"] == 2
    assert cert["fill"] == [[2, 0], [0, 2]]
    assert cert["equal_degree"]["type"] == "EqualDegreeExclusion"
    assert cert["homomorphism"]["member"] is False


def test_interior_certificate_carries_power_witness():
    v = monomial_membership(MonomialIdeal([(2, 0), (0, 5)]), (1, 3))
    assert v.location.tag == INTERIOR
    assert v.certificate["power_witness"] == {"n": 10, "theta": 11, "alpha": [5, 6]}


def test_non_primary_ideals_are_refused_for_cont_and_ax():
    I = MonomialIdeal([(2, 0), (1, 1)])
    with pytest.raises(NotPrimaryError):
        monomial_membership(I, (1, 3), CONTINUOUS)
    assert monomial_membership(I, (1, 3), INTEGRAL).result == MEMBER


def test_certify_false_still_replays():
    gens = [(6, 0, 0), (0, 4, 0), (0, 0, 3)]
    v = monomial_membership(MonomialIdeal(gens), (3, 2, 0), AXES, certify=False)
    assert v.result == NOT_MEMBER
    assert v.certificate["fill"] is None and v.certificate["normal"] == [2, 3, 4]
    rep = replay_monomial(gens, (3, 2, 0), AXES, v.result, v.certificate)
    assert rep.ok, rep.first_failure


def test_tampered_boundary_certificate_fails():
    gens = [(2, 0), (0, 2)]
    v = monomial_membership(MonomialIdeal(gens), (1, 1), AXES)
    cert = dict(v.certificate, normal=[1, 2])
    assert not replay_monomial(gens, (1, 1), AXES, v.result, cert).ok


# equal degree

def test_equal_degree_member_and_non_member():
    v = equal_degree_membership(poly("z^2 - w^2"), [poly("z^2 + z*w"), poly("z*w + w^2")], 2)
    assert v.result == MEMBER and v.certificate["coefficients"] == ["1", "-1"]
    v = equal_degree_membership(poly("z*w"), [poly("z^2"), poly("w^2")], 2)
    assert v.result == NOT_MEMBER
    with pytest.raises(ValueError):
        equal_degree_membership(poly("z*w + z"), [poly("z^2")], 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_equal_degree_routes_agree_and_replay(seed):
    f, gens, d = random_equal_degree_instance(random.Random(seed))
    v = equal_degree_membership(f, gens, d)  # raises on route disagreement
    rep = replay_equal_degree(f, gens, v.result, v.certificate)
    assert rep.ok, rep.first_failure


# power representations

def test_power_representation_examples():
    gens = [poly("z^3"), poly("w^3")]
    check = verify_power_representation(poly("z^2*w^2"), gens, 3, 4, {(2, 2): Polynomial.constant(1, 2)})
    assert check.status == VALID_CONCLUSIVE
    assert verify_power_representation(poly("z"), [poly("z^2")], 1, 2, {(2,): 1}).status == INVALID
    with pytest.raises(ValueError):
        verify_power_representation(poly("z"), [poly("z^2")], 1, 2, {(1,): 1})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_boundary_point_has_only_inconclusive_power_representations(n):
    I = MonomialIdeal([(3, 0), (2, 1), (0, 3)])
    theta, coeffs = monomial_power_representation(I, (1, 2), n)
    assert theta == n
    check = verify_power_representation(poly("z*w^2"), I.polynomials(), n, theta, coeffs)
    assert check.status == VALID_INCONCLUSIVE


def test_represent_with_smaller_theta():
    I = MonomialIdeal([(2, 0), (0, 5)])
    theta, coeffs = monomial_power_representation(I, (1, 3), 10, 9)
    assert theta == 9
    assert verify_power_representation(poly("z*w^3"), I.polynomials(), 10, 9, coeffs).valid
    assert monomial_power_representation(I, (1, 3), 10, 12) is None


# randomized agreement with the oracle

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_verdicts_match_oracles(seed):
    rng = random.Random(seed)
    I = random_primary_ideal(rng, max_exp=5)
    P = build_polyhedron(I)
    pts = list(box(I))
    for x in rng.sample(pts, min(6, len(pts))):
        cont = monomial_membership(I, x, CONTINUOUS, n_max=24, certify=False)
        ax = monomial_membership(I, x, AXES, n_max=24, certify=False)
        integral = monomial_membership(I, x, INTEGRAL, n_max=24)
        assert cont.result == ax.result != UNDECIDED
        assert cont.member == oracle_in_closure(I, x)
        assert integral.member == oracle_in_hull(I, x)
        if cont.member:
            assert integral.member
        # replay rebuilds the full transcript, whose size grows like C(m + d, m)
        if locate(P, I, x).tag == BOUNDARY and ax.certificate["degree"] <= 12:
            assert replay_monomial(I.generators, x, AXES, ax.result, ax.certificate).ok
