"""Independent replay of JSON certificates emitted by the command-line tool.

The verifier re-derives every checkable fact from the echoed input using
polynomial, lattice and axes-ring arithmetic.  It never calls the decision
pipeline in :mod:`contclosure.closure` for monomial verdicts, so a replay is a
genuine second opinion rather than a rerun.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from . import linalg
from .axes import AxesElement, canonical_form, ideal_membership, polynomial_image
from .closure import (
    AXES, CONTINUOUS, INTEGRAL, MEMBER, NOT_MEMBER, UNDECIDED, VALID_CONCLUSIVE,
    VALID_INCONCLUSIVE, INVALID, monomials_of_degree, normalize_kind, principal_lattice_points,
    evaluation_injective, variable_images, verify_power_representation,
)
from .grammar import ParseError, parse_polynomial
from .newton import build_polyhedron, epsilon_lp
from .poly import MonomialIdeal, Polynomial, dominates, minimalize


class MalformedCertificate(ValueError):
    """The payload is not a certificate this tool could have produced."""


@dataclass(frozen=True)
class Step:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Replay:
    steps: List[Step] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.steps) and all(s.ok for s in self.steps)

    @property
    def first_failure(self):
        return next((s for s in self.steps if not s.ok), None)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.steps.append(Step(name, bool(ok), detail))
        return bool(ok)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "steps": [{"name": s.name, "ok": s.ok, "detail": s.detail} for s in self.steps],
        }


def _get(d, key, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise MalformedCertificate(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise MalformedCertificate(f"field {key!r} has type {type(v).__name__}")
    return v


def _vec(v, m=None) -> tuple:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise MalformedCertificate(f"expected an integer vector, got {v!r}")
    if m is not None and len(v) != m:
        raise MalformedCertificate(f"vector {v} does not have length {m}")
    return tuple(v)


def _frac(s) -> Fraction:
    try:
        return Fraction(s)
    except (TypeError, ValueError, ZeroDivisionError):
        raise MalformedCertificate(f"not a rational number: {s!r}") from None


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# monomial certificates

def _replay_in_ideal(rep, gens, tau, cert):
    g = _vec(_get(cert, "generator"), len(tau))
    rep.add("generator-listed", g in gens, f"{list(g)}")
    rep.add("generator-divides", dominates(tau, g), f"{list(g)} <= {list(tau)}")


def _replay_outside(rep, gens, tau, cert):
    facet = _get(cert, "facet", dict)
    a = _vec(_get(facet, "normal"), len(tau))
    b = _get(facet, "offset", int)
    rep.add("facet-normal-nonnegative", all(x >= 0 for x in a))
    bad = [list(g) for g in gens if _dot(a, g) < b]
    rep.add("facet-valid", not bad, "violated by " + str(bad) if bad else f"a.g >= {b} on all generators")
    rep.add("facet-separates", _dot(a, tau) < b, f"a.tau = {_dot(a, tau)} < {b}")


def _replay_interior(rep, gens, tau, cert, kind):
    m = len(tau)
    listed = [_vec(g, m) for g in _get(cert, "generators", list)]
    rep.add("generators-match", sorted(listed) == sorted(gens))
    w = [_frac(x) for x in _get(cert, "weights", list)]
    eps = _frac(_get(cert, "epsilon"))
    loc = _get(cert, "location", str)
    ok_w = len(w) == len(listed) and all(x >= 0 for x in w) and sum(w) == 1
    rep.add("convex-weights", ok_w, f"sum = {sum(w)}")
    if ok_w:
        point = [sum(wi * g[j] for wi, g in zip(w, listed)) for j in range(m)]
        direction = [int(t > 0) for t in tau]
        slack = [tau[j] - eps * direction[j] - point[j] for j in range(m)]
        rep.add("shifted-point-in-hull", all(s >= 0 for s in slack),
                f"tau - eps*s - sum w g = {[str(s) for s in slack]}")
    if kind == INTEGRAL:
        rep.add("epsilon-sign", eps >= 0 and loc in ("Interior", "Boundary"), f"eps = {eps}")
    else:
        rep.add("epsilon-sign", eps > 0 and loc == "Interior", f"eps = {eps}")
    pw = cert.get("power_witness")
    if pw is not None:
        n = _get(pw, "n", int)
        theta = _get(pw, "theta", int)
        alpha = _vec(_get(pw, "alpha"), len(listed))
        used = [sum(a * g[j] for a, g in zip(alpha, listed)) for j in range(m)]
        ok = 0 < n < theta and sum(alpha) == theta and all(a >= 0 for a in alpha)
        ok = ok and dominates([n * t for t in tau], used)
        rep.add("power-witness", ok, f"sum alpha g = {used} <= {n}*tau, |alpha| = {theta}")


def _replay_boundary(rep, gens, tau, cert, kind):
    m = len(tau)
    rep.add("kind", kind in (AXES, CONTINUOUS), kind)
    a = _vec(_get(cert, "normal"), m)
    d = _get(cert, "degree", int)
    ok = all(x > 0 for x in a) and all(_dot(a, g) >= d for g in gens) and _dot(a, tau) == d
    rep.add("supporting-normal", ok, f"a = {list(a)}, a.tau = {_dot(a, tau)}, d = {d}")
    if not ok:
        return
    delta = _vec(_get(cert, "substitution"), m)
    target = tuple(x * t for x, t in zip(delta, tau))
    rep.add("substitution", delta == a and _vec(_get(cert, "target"), m) == target,
            f"delta = {list(delta)}, target = {list(target)}")
    fill = [mu for mu in monomials_of_degree(m, d) if mu != target]
    recorded = cert.get("fill")
    if recorded is not None:
        rep.add("fill", sorted(_vec(x, m) for x in recorded) == sorted(fill),
                f"{len(fill)} monomials of degree {d}")
    else:
        rep.add("fill", True, f"recomputed: {len(fill)} monomials of degree {d}")
    substituted = [tuple(x * g for x, g in zip(delta, gen)) for gen in gens]
    low = [list(s) for s in substituted if sum(s) < d]
    rep.add("substituted-degrees", not low, f"all substituted generators have degree >= {d}")
    # coefficient route: the target monomial is a standard basis vector outside the span of the others
    idx = {mu: i for i, mu in enumerate(monomials_of_degree(m, d))}
    rows = [[int(i == idx[mu]) for i in range(len(idx))] for mu in fill]
    tvec = [int(i == idx[target]) for i in range(len(idx))]
    rep.add("span-check", linalg.solve_left(rows, tvec) is None, "target outside the span of the fill")
    es = principal_lattice_points(m, d)
    eq = cert.get("equal_degree")
    if eq is not None:
        pts = [_vec(p, m) for p in _get(eq, "points", list)]
        rep.add("evaluation-set", evaluation_injective(pts, m, d), f"{len(pts)} points, degree {d}")
    else:
        pts = list(es.points)
        rep.add("evaluation-set", evaluation_injective(pts, m, d), f"recomputed: {len(pts)} points")
    images = variable_images(pts, m)
    fill_images = [polynomial_image(Polynomial.monomial(mu), images) for mu in fill]
    t_image = polynomial_image(Polynomial.monomial(target), images)
    res = ideal_membership(t_image, canonical_form(fill_images))
    rep.add("axes-membership", not res.member, res.reason)
    hom = cert.get("homomorphism")
    comp = [im ** aj for im, aj in zip(images, a)]
    if hom is not None:
        try:
            recorded_images = [AxesElement.from_json(x) for x in _get(hom, "images", list)]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificate(f"bad axes element: {exc}") from None
        rep.add("homomorphism-images", recorded_images == comp, "z_j -> (sum_r P_r[j] x_r)^a_j")
    gen_images = [polynomial_image(Polynomial.monomial(g), comp) for g in gens]
    tau_image = polynomial_image(Polynomial.monomial(tau), comp)
    res = ideal_membership(tau_image, canonical_form(gen_images))
    rep.add("homomorphism", not res.member, res.reason)


def replay_monomial(gens, tau, kind: str, result: str, cert: dict) -> Replay:
    rep = Replay()
    gens = [tuple(g) for g in gens]
    tau = tuple(tau)
    kind = normalize_kind(kind)
    ctype = _get(cert, "type", str)
    expected = {
        "AlreadyInIdeal": MEMBER, "InteriorWitness": MEMBER, "OutsideHull": NOT_MEMBER,
        "BoundaryExclusion": NOT_MEMBER, "NoCertificate": UNDECIDED,
    }
    if ctype not in expected:
        raise MalformedCertificate(f"unknown certificate type {ctype!r} for a monomial verdict")
    rep.add("verdict-matches-certificate", result == expected[ctype], f"{result} with {ctype}")
    if kind != INTEGRAL:
        rep.add("primary", MonomialIdeal(gens).is_primary())
    if ctype == "AlreadyInIdeal":
        _replay_in_ideal(rep, gens, tau, cert)
    elif ctype == "OutsideHull":
        _replay_outside(rep, gens, tau, cert)
    elif ctype == "InteriorWitness":
        _replay_interior(rep, gens, tau, cert, kind)
    elif ctype == "BoundaryExclusion":
        _replay_boundary(rep, gens, tau, cert, kind)
    else:
        rep.add("no-claim", True, str(cert.get("reason", "")))
    return rep


# polynomial certificates

def replay_equal_degree(f: Polynomial, gens, result: str, cert: dict) -> Replay:
    rep = Replay()
    gens = list(gens)
    ctype = _get(cert, "type", str)
    d = _get(cert, "degree", int)
    rep.add("homogeneous", all(g.is_homogeneous(d) for g in [f, *gens]), f"degree {d}")
    if ctype == "SpanCoefficients":
        rep.add("verdict-matches-certificate", result == MEMBER, result)
        cs = [_frac(c) for c in _get(cert, "coefficients", list)]
        if len(cs) != len(gens):
            raise MalformedCertificate("coefficient count differs from generator count")
        recon = Polynomial.zero(f.nvars)
        for c, g in zip(cs, gens):
            recon = recon + g * c
        rep.add("span-check", recon == f, f"sum c_i g_i - f = {(recon - f).to_str()}")
        return rep
    if ctype != "EqualDegreeExclusion":
        raise MalformedCertificate(f"unknown certificate type {ctype!r} for an equal-degree verdict")
    rep.add("verdict-matches-certificate", result == NOT_MEMBER, result)
    monos = monomials_of_degree(f.nvars, d)
    rows = [[g.coeff(a) for a in monos] for g in gens]
    target = [f.coeff(a) for a in monos]
    rep.add("span-check", linalg.solve_left(rows, target) is None, "candidate outside the span")
    pts = [_vec(p, f.nvars) for p in _get(cert, "points", list)]
    rep.add("evaluation-set", evaluation_injective(pts, f.nvars, d), f"{len(pts)} points")
    images = variable_images(pts, f.nvars)
    gi = [polynomial_image(g, images) for g in gens]
    fi = polynomial_image(f, images)
    if gi:
        res = ideal_membership(fi, canonical_form(gi))
        rep.add("axes-membership", not res.member, res.reason)
    else:
        rep.add("axes-membership", not fi.is_zero(), "empty generator list")
    return rep


def replay_power(f: Polynomial, gens, cert: dict, result: str) -> Replay:
    rep = Replay()
    n = _get(cert, "n", int)
    theta = _get(cert, "theta", int)
    coeffs = {}
    for term in _get(cert, "terms", list):
        alpha = _vec(_get(term, "alpha"), len(gens))
        coeffs[alpha] = _get(term, "coefficient")
    try:
        check = verify_power_representation(f, gens, n, theta, coeffs)
    except ValueError as exc:
        rep.add("multi-indices", False, str(exc))
        return rep
    rep.add("multi-indices", True, f"|alpha| = {theta}")
    rep.add("expansion", check.status != INVALID, f"f^n - sum = {check.residual.to_str()}")
    want = VALID_CONCLUSIVE if n < theta else VALID_INCONCLUSIVE
    if check.status == INVALID:
        want = INVALID
    rep.add("verdict-matches-certificate", result == want, f"{result}, n = {n}, theta = {theta}")
    return rep


def replay_closure(gens, closure, box=None) -> Replay:
    """Check that ``closure`` is the minimal generating set of I^cont."""
    rep = Replay()
    gens = [tuple(g) for g in gens]
    closure = [tuple(c) for c in closure]
    m = len(gens[0])
    ideal = MonomialIdeal(gens)
    rep.add("primary", ideal.is_primary())
    rep.add("antichain", sorted(minimalize(closure)) == sorted(closure))
    rep.add("contains-ideal", all(any(dominates(g, c) for c in closure) for g in gens))
    # every listed generator is interior (ideal points are trivially members); checked through the LP
    bad = []
    for c in closure:
        if ideal.contains(c):
            continue
        eps, _ = epsilon_lp(ideal.generators, c)
        if eps is None or eps <= 0:
            bad.append(list(c))
    rep.add("generators-interior", not bad, f"not interior: {bad}" if bad else "epsilon > 0 for each")
    # completeness: every interior lattice point below the pure-power bounds is covered
    P = build_polyhedron(ideal)
    bounds = [max(g[j] for g in gens) for j in range(m)]
    missing = []
    for x in itertools.product(*(range(b + 1) for b in bounds)):
        if ideal.contains(x) or P.interior_contains(x):
            if not any(dominates(x, c) for c in closure):
                missing.append(list(x))
    rep.add("complete", not missing, f"uncovered: {missing[:5]}" if missing else "box fully covered")
    return rep


# payload dispatch

def _names(inp) -> list:
    names = _get(inp, "vars", list)
    if not names or not all(isinstance(n, str) for n in names):
        raise MalformedCertificate("bad variable list")
    return names


def _parse(text, names) -> Polynomial:
    try:
        return parse_polynomial(text, names)
    except ParseError as exc:
        raise MalformedCertificate(f"cannot parse {text!r}: {exc}") from None


def verify_payload(payload: dict) -> Replay:
    if not isinstance(payload, dict):
        raise MalformedCertificate("payload is not a JSON object")
    command = _get(payload, "command", str)
    inp = _get(payload, "input", dict)
    names = _names(inp)
    m = len(names)
    if command == "closure":
        gens = [_vec(g, m) for g in _get(inp, "ideal_exponents", list)]
        closure = [_vec(g, m) for g in _get(payload, "generators", list)]
        if not gens:
            raise MalformedCertificate("empty ideal")
        return replay_closure(gens, closure)
    if command not in ("member", "represent"):
        raise MalformedCertificate(f"nothing to verify for command {command!r}")
    cert = _get(payload, "certificate", dict)
    verdict = _get(payload, "verdict", dict)
    result = _get(verdict, "result", str)
    if command == "represent":
        f = _parse(_get(inp, "candidate", str), names)
        gens = [_parse(t, names) for t in _get(inp, "ideal", list)]
        terms = {}
        for term in _get(cert, "terms", list):
            terms_alpha = _vec(_get(term, "alpha"), len(gens))
            terms[terms_alpha] = _parse(_get(term, "coefficient", str), names)
        cert = dict(cert, terms=[{"alpha": list(a), "coefficient": c} for a, c in terms.items()])
        return replay_power(f, gens, cert, result)
    kind = _get(verdict, "kind", str)
    if "candidate_exponent" in inp:
        gens = [_vec(g, m) for g in _get(inp, "ideal_exponents", list)]
        tau = _vec(inp["candidate_exponent"], m)
        return replay_monomial(gens, tau, kind, result, cert)
    f = _parse(_get(inp, "candidate", str), names)
    gens = [_parse(t, names) for t in _get(inp, "ideal", list)]
    if cert.get("type") == "NoCertificate":
        rep = Replay()
        rep.add("verdict-matches-certificate", result == UNDECIDED, result)
        rep.add("no-claim", True, str(cert.get("reason", "")))
        return rep
    return replay_equal_degree(f, gens, result, cert)


__all__ = [
    "MalformedCertificate", "Replay", "Step", "replay_closure", "replay_equal_degree",
    "replay_monomial", "replay_power", "verify_payload",
]
