"""Membership verdicts for integral, axes and continuous closures.

Every Member/NotMember verdict carries a JSON-ready certificate dict that
:mod:`contclosure.certificates` can replay with exact arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Tuple

from . import linalg
from .axes import AxesElement, canonical_form, ideal_membership, polynomial_image
from .newton import (
    BOUNDARY, IN_IDEAL, INTERIOR, OUTSIDE, PointLocation, PowerWitness,
    build_polyhedron, locate, max_power_index, power_witness, supporting_normal,
)
from .poly import MonomialIdeal, NotPrimaryError, Polynomial, check_exponent, dominates

INTEGRAL = "integral"
AXES = "axes"
CONTINUOUS = "continuous"

MEMBER = "Member"
NOT_MEMBER = "NotMember"
UNDECIDED = "Undecided"

_KIND_ALIASES = {
    "integral": INTEGRAL, "int": INTEGRAL,
    "axes": AXES, "ax": AXES,
    "continuous": CONTINUOUS, "cont": CONTINUOUS,
}


def normalize_kind(kind: str) -> str:
    try:
        return _KIND_ALIASES[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown closure kind {kind!r}") from None


class PathDisagreement(AssertionError):
    """Two independent decision routes returned different answers."""


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Verdict:
    kind: str
    result: str
    certificate: dict
    location: Optional[PointLocation] = None
    power: Optional[PowerWitness] = None

    @property
    def member(self) -> bool:
        return self.result == MEMBER

    def to_json(self) -> dict:
        return {"kind": self.kind, "result": self.result}


# evaluation points

@dataclass(frozen=True)
class EvaluationSet:
    """Points on which a polynomial of degree <= d is determined by its values."""

    degree: int
    dim: int
    points: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.points)


def monomials_of_degree(m: int, d: int) -> list:
    """Exponent vectors of total degree exactly d, descending lex."""
    out = []
    for cut in itertools.combinations(range(d + m - 1), m - 1):
        prev = -1
        alpha = []
        for c in cut + (d + m - 1,):
            alpha.append(c - prev - 1)
            prev = c
        out.append(tuple(alpha))
    return sorted(out, reverse=True)


def monomials_up_to(m: int, d: int) -> list:
    return [a for e in range(d + 1) for a in monomials_of_degree(m, e)]


def evaluation_matrix(points, m: int, d: int) -> list:
    monos = monomials_up_to(m, d)
    rows = []
    for alpha in monos:
        row = []
        for p in points:
            v = 1
            for x, e in zip(p, alpha):
                v *= x ** e
            row.append(v)
        rows.append(row)
    return rows


def evaluation_injective(points, m: int, d: int) -> bool:
    rows = evaluation_matrix(points, m, d)
    if len(points) < len(rows):
        return False
    if linalg.full_rank_mod_p(rows):
        return True
    return linalg.rank(rows) == len(rows)


@lru_cache(maxsize=64)
def principal_lattice_points(m: int, d: int) -> EvaluationSet:
    """The lattice points {alpha in N^m : |alpha| <= d}, rank-checked."""
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    pts = tuple(monomials_up_to(m, d))
    if not evaluation_injective(pts, m, d):
        pts = tuple(itertools.product(range(d + 1), repeat=m))
        if not evaluation_injective(pts, m, d):
            raise ArithmeticError("no unisolvent point set found")
    return EvaluationSet(d, m, pts)


# equal-degree test

def _coefficient_vector(f: Polynomial, monos) -> list:
    return [f.coeff(a) for a in monos]


def variable_images(points: Sequence[Sequence[int]], m: int) -> list:
    """Images of z_j under z_j -> sum_r P_r[j] x_r."""
    return [AxesElement.linear([p[j] for p in points]) for j in range(m)]


def _check_equal_degree_input(f, gens, d):
    for g in [f, *gens]:
        if not g.is_homogeneous(d):
            raise ValueError(f"{g.to_str()} is not homogeneous of degree {d}")
    m = f.nvars
    for g in gens:
        if g.nvars != m:
            raise ValueError("generators and candidate have different variable counts")


def equal_degree_membership(f: Polynomial, gens: Sequence[Polynomial], d: int,
                            kind: str = AXES) -> Verdict:
    """Decide f in K-span(gens) for forms of one degree d, by two routes that must agree."""
    gens = list(gens)
    _check_equal_degree_input(f, gens, d)
    m = f.nvars
    monos = monomials_of_degree(m, d)

    # route (a): coefficient linear algebra
    span = linalg.solve_left([_coefficient_vector(g, monos) for g in gens], _coefficient_vector(f, monos))

    # route (b): homomorphism into a ring of axes
    es = principal_lattice_points(m, d)
    images = variable_images(es.points, m)
    gen_images = [polynomial_image(g, images) for g in gens]
    f_image = polynomial_image(f, images)
    if gen_images:
        axes_result = ideal_membership(f_image, canonical_form(gen_images))
        axes_member = axes_result.member
    else:
        axes_result = None
        axes_member = f_image.is_zero()
    if (span is not None) != axes_member:
        raise PathDisagreement(f"coefficient route {span is not None}, axes route {axes_member}")

    transcript = {
        "degree": d,
        "points": [list(p) for p in es.points],
        "reason": axes_result.reason if axes_result is not None else "no generators",
        "axis": axes_result.axis if axes_result is not None else None,
    }
    if span is not None:
        if axes_result is not None:
            recon = sum((g * c for g, c in zip(gens, axes_result.combination)), Polynomial.zero(m))
            if recon != f:
                raise PathDisagreement("axes certificate does not reconstruct the candidate")
        cert = {"type": "SpanCoefficients", "coefficients": [_q(c) for c in span], **transcript}
        return Verdict(kind, MEMBER, cert)
    cert = {"type": "EqualDegreeExclusion", **transcript}
    return Verdict(kind, NOT_MEMBER, cert)


# monomial pipeline

def boundary_exclusion(ideal: MonomialIdeal, tau, P=None, certify: bool = True) -> Optional[dict]:
    """Certificate that z^tau is outside the axes closure, or None if no equal-degree route exists.

    With ``certify=False`` only the supporting normal and the substitution are
    recorded; the equal-degree transcript is left for the verifier to recompute.
    """
    P = P or build_polyhedron(ideal)
    sn = supporting_normal(P, tau)
    if sn is None:
        return None
    a, d = sn.normal, sn.degree
    m = ideal.nvars
    target = tuple(x * t for x, t in zip(a, tau))
    if not certify:
        return {
            "type": "BoundaryExclusion",
            "normal": list(a),
            "degree": d,
            "substitution": list(a),
            "target": list(target),
            "fill": None,
            "equal_degree": None,
            "homomorphism": None,
        }
    fill = [mu for mu in monomials_of_degree(m, d) if mu != target]
    verdict = equal_degree_membership(
        Polynomial.monomial(target), [Polynomial.monomial(mu) for mu in fill], d
    )
    if verdict.result != NOT_MEMBER:
        raise PathDisagreement(f"equal-degree test admits {target} at a boundary point")
    # the composite map z_j -> (sum_r P_r[j] x_r)^a_j applied to the original ideal
    es = principal_lattice_points(m, d)
    images = [im ** aj for im, aj in zip(variable_images(es.points, m), a)]
    gen_images = [polynomial_image(Polynomial.monomial(g), images) for g in ideal.generators]
    tau_image = polynomial_image(Polynomial.monomial(tau), images)
    hom = ideal_membership(tau_image, canonical_form(gen_images))
    if hom.member:
        raise PathDisagreement("composite homomorphism does not separate the candidate")
    return {
        "type": "BoundaryExclusion",
        "normal": list(a),
        "degree": d,
        "substitution": list(a),
        "target": list(target),
        "fill": [list(mu) for mu in fill],
        "equal_degree": verdict.certificate,
        "homomorphism": {
            "images": [im.to_json() for im in images],
            "member": False,
            "reason": hom.reason,
            "axis": hom.axis,
        },
    }


def monomial_membership(ideal: MonomialIdeal, tau, kind: str = CONTINUOUS,
                        n_max: int = 64, certify: bool = True) -> Verdict:
    """Decide z^tau in the closure of a monomial ideal.

    Integral closure needs no primary hypothesis; the axes and continuous
    closures coincide for primary monomial ideals and are decided together.
    """
    kind = normalize_kind(kind)
    tau = check_exponent(tau, ideal.nvars)
    if kind != INTEGRAL and not ideal.is_primary():
        raise NotPrimaryError(f"{ideal!r} is not primary; {kind} closure is only decided for primary ideals")
    P = build_polyhedron(ideal)
    loc = locate(P, ideal, tau)
    if loc.tag == IN_IDEAL:
        return Verdict(kind, MEMBER, {"type": "AlreadyInIdeal", "generator": list(loc.generator)}, loc)
    if loc.tag == OUTSIDE:
        a, b = loc.separating
        cert = {"type": "OutsideHull", "facet": {"normal": list(a), "offset": b}}
        return Verdict(kind, NOT_MEMBER, cert, loc)
    if loc.tag == INTERIOR or kind == INTEGRAL:
        pw = power_witness(ideal, tau, n_max) if loc.tag == INTERIOR else None
        cert = {
            "type": "InteriorWitness",
            "location": loc.tag,
            "epsilon": _q(loc.epsilon),
            "direction": [int(t > 0) for t in tau],
            "weights": [_q(w) for w in loc.weights],
            "generators": [list(g) for g in P.generators],
            "power_witness": None if pw is None else {
                "n": pw.n, "theta": pw.theta, "alpha": list(pw.alpha),
            },
        }
        return Verdict(kind, MEMBER, cert, loc, pw)
    assert loc.tag == BOUNDARY
    cert = boundary_exclusion(ideal, tau, P, certify)
    if cert is None:
        return Verdict(kind, UNDECIDED, {
            "type": "NoCertificate",
            "reason": "boundary, no equal-degree certificate constructed",
            "tight": [{"normal": list(a), "offset": b} for a, b in loc.tight],
        }, loc)
    return Verdict(kind, NOT_MEMBER, cert, loc)


# power representations

VALID_CONCLUSIVE = "ContMember"
VALID_INCONCLUSIVE = "NoConclusion"
INVALID = "Invalid"


@dataclass(frozen=True)
class PowerCheck:
    status: str
    residual: Polynomial

    @property
    def valid(self) -> bool:
        return self.status != INVALID


def verify_power_representation(f: Polynomial, gens: Sequence[Polynomial], n: int, theta: int,
                                coeffs: Mapping[Tuple[int, ...], Polynomial]) -> PowerCheck:
    """Check f^n == sum_alpha coeffs[alpha] * prod gens^alpha with |alpha| == theta."""
    gens = list(gens)
    if n < 1 or theta < 0:
        raise ValueError("need n >= 1 and theta >= 0")
    total = Polynomial.zero(f.nvars)
    for alpha, c in coeffs.items():
        alpha = tuple(alpha)
        if len(alpha) != len(gens) or any(a < 0 for a in alpha) or sum(alpha) != theta:
            raise ValueError(f"malformed multi-index {alpha} for |alpha| = {theta}")
        term = c if isinstance(c, Polynomial) else Polynomial.constant(c, f.nvars)
        for g, a in zip(gens, alpha):
            if a:
                term = term * g ** a
        total = total + term
    residual = f ** n - total
    if not residual.is_zero():
        return PowerCheck(INVALID, residual)
    return PowerCheck(VALID_CONCLUSIVE if n < theta else VALID_INCONCLUSIVE, residual)


def monomial_power_representation(ideal: MonomialIdeal, tau, n: int, theta: int | None = None):
    """Coefficients writing (z^tau)^n as an element of I^theta, or None.

    ``theta`` defaults to the largest achievable value.
    """
    cap = [n * t for t in tau]
    best, alpha = max_power_index(ideal.generators, cap)
    if theta is None:
        theta = best
    if theta > best:
        return None
    alpha = list(alpha)
    excess = best - theta
    for i in range(len(alpha)):
        drop = min(alpha[i], excess)
        alpha[i] -= drop
        excess -= drop
    used = [sum(a * g[j] for a, g in zip(alpha, ideal.generators)) for j in range(len(tau))]
    assert dominates(cap, used)
    cofactor = Polynomial.monomial([c - u for c, u in zip(cap, used)])
    return theta, {tuple(alpha): cofactor}
