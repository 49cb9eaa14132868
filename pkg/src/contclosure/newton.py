"""Lattice geometry of the Newton polyhedron conv(G) + R_+^m of a monomial ideal."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from . import linalg
from .lp import INFEASIBLE, OPTIMAL, linprog
from .poly import ExponentVector, MonomialIdeal, NotPrimaryError, check_exponent, dominates

IN_IDEAL = "InIdeal"
OUTSIDE = "Outside"
BOUNDARY = "Boundary"
INTERIOR = "Interior"

Facet = Tuple[Tuple[int, ...], int]


class GeometryMismatch(AssertionError):
    """The LP route and the facet route disagree about a point."""


def _primitive(v: Sequence[Fraction]) -> Tuple[int, ...]:
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in ints) if g else tuple(ints)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _extreme_rays(rows: Sequence[Sequence[int]], dim: int) -> list:
    """Extreme rays of the pointed cone {y : row . y >= 0 for every row}.

    Double description: start from the simplicial cone of the first ``dim``
    rows (which must be linearly independent) and add one constraint at a time.
    """
    init = [list(r) for r in rows[:dim]]
    inv_cols = []
    for k in range(dim):
        col = linalg.solve(init, [int(i == k) for i in range(dim)])
        if col is None:
            raise ValueError("initial constraints are not independent")
        inv_cols.append(_primitive(col))
    rays = inv_cols
    done = [tuple(r) for r in rows[:dim]]
    for h in rows[dim:]:
        vals = [_dot(h, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        new = pos + zer
        for p in pos:
            hp = _dot(h, p)
            zp = {i for i, c in enumerate(done) if _dot(c, p) == 0}
            for n in neg:
                common = [done[i] for i in zp if _dot(done[i], n) == 0]
                if len(common) < dim - 2 or linalg.rank(common) != dim - 2:
                    continue
                hn = _dot(h, n)
                combo = [Fraction(hp * y - hn * x) for x, y in zip(p, n)]
                new.append(_primitive(combo))
        rays = sorted(set(new))
        done.append(tuple(h))
    return rays


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(generators) + R_+^m in both V- and H-representation.

    ``facets`` holds pairs ``(a, b)`` meaning ``a . x >= b`` with ``a`` a
    primitive nonnegative integer vector.
    """

    generators: Tuple[ExponentVector, ...]
    facets: Tuple[Facet, ...]

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def slacks(self, x) -> list:
        return [_dot(a, x) - b for a, b in self.facets]

    def contains(self, x) -> bool:
        return all(s >= 0 for s in self.slacks(x))

    def interior_contains(self, x) -> bool:
        """x lies in the interior of P taken inside R_+^m.

        Coordinate facets (offset 0) bound R_+^m itself and are ignored.
        """
        return all(s > 0 if b > 0 else s >= 0 for s, (_, b) in zip(self.slacks(x), self.facets))

    def check(self) -> None:
        """Verify V/H consistency; raises AssertionError on failure."""
        m = self.dim
        for a, b in self.facets:
            assert all(x >= 0 for x in a), f"facet normal {a} has a negative entry"
            slack = [_dot(a, g) - b for g in self.generators]
            assert min(slack) >= 0, f"generator violates facet {a} >= {b}"
            tight = [g for g, s in zip(self.generators, slack) if s == 0]
            assert tight, f"facet {a} >= {b} is not tight at any generator"
            span = [[x - y for x, y in zip(g, tight[0])] for g in tight[1:]]
            span += [[int(i == j) for i in range(m)] for j in range(m) if a[j] == 0]
            assert linalg.rank(span) == m - 1 if span else m == 1, (
                f"facet {a} >= {b} is not spanned by its tight generators"
            )


def build_polyhedron(generators) -> NewtonPolyhedron:
    if isinstance(generators, MonomialIdeal):
        gens = generators.generators
    else:
        gens = tuple(sorted(set(check_exponent(g) for g in generators)))
    if not gens:
        raise ValueError("empty generator set")
    m = len(gens[0])
    # cone of valid inequalities (a, b): a >= 0 and a . g - b >= 0
    rows = [[int(i == j) for i in range(m)] + [0] for j in range(m)]
    rows += [list(g) + [-1] for g in gens]
    rays = _extreme_rays(rows, m + 1)
    facets = []
    for r in rays:
        a, b = tuple(r[:m]), r[m]
        if any(a):
            facets.append((a, b))
    return NewtonPolyhedron(tuple(gens), tuple(sorted(facets)))


@dataclass(frozen=True)
class PointLocation:
    """Where an exponent vector sits relative to the ideal and its Newton polyhedron.

    ``epsilon`` is the largest e with tau - e*s in P, where s is the 0/1
    support vector of tau (negative or None outside); ``weights`` are convex
    weights on the generators realising it.
    """

    tag: str
    epsilon: Optional[Fraction] = None
    tight: Tuple[Facet, ...] = ()
    separating: Optional[Facet] = None
    weights: Tuple[Fraction, ...] = ()
    generator: Optional[ExponentVector] = None


def support_direction(tau) -> Tuple[int, ...]:
    """Indicator vector of the support of tau.

    Interior is meant inside R_+^m, so the test point is only pushed down
    along coordinates where it is positive.
    """
    return tuple(int(t > 0) for t in tau)


def locate_by_facets(P: NewtonPolyhedron, tau) -> PointLocation:
    """Classify tau through the facet inequalities.

    ``epsilon`` is the largest e with tau - e*s in P, s the support direction
    of tau; it is None when no such e exists.  Facets with a.s == 0 are
    coordinate facets the point already lies on and do not bound e.
    """
    s = support_direction(tau)
    slacks = P.slacks(tau)
    eps = None
    arg = None
    for i, (sl, (a, _)) in enumerate(zip(slacks, P.facets)):
        rate = _dot(a, s)
        if rate == 0:
            if sl < 0:
                return PointLocation(OUTSIDE, None, separating=P.facets[i])
            continue
        e = Fraction(sl, rate)
        if eps is None or e < eps:
            eps, arg = e, i
    if eps is None:
        raise GeometryMismatch(f"no facet bounds the point {tau}")
    if eps < 0:
        return PointLocation(OUTSIDE, eps, separating=P.facets[arg])
    if eps == 0:
        tight = tuple(f for f, sl in zip(P.facets, slacks) if sl == 0 and _dot(f[0], s) > 0)
        return PointLocation(BOUNDARY, eps, tight=tight)
    return PointLocation(INTERIOR, eps)


def epsilon_lp(generators, tau):
    """Maximize e subject to tau - e*s = sum l_i g_i + mu, l >= 0, sum l = 1, mu >= 0.

    s is the support direction of tau.  Returns (e, l), or (None, ()) when
    the program is infeasible.
    """
    gens = list(generators)
    m = len(tau)
    k = len(gens)
    s = support_direction(tau)
    # variables: l (k), mu (m), e (free)
    A_eq = []
    b_eq = []
    for j in range(m):
        A_eq.append([g[j] for g in gens] + [int(i == j) for i in range(m)] + [s[j]])
        b_eq.append(tau[j])
    A_eq.append([1] * k + [0] * m + [0])
    b_eq.append(1)
    c = [0] * (k + m) + [1]
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, free=[k + m])
    if res.status == INFEASIBLE:
        return None, ()
    if res.status != OPTIMAL:
        raise GeometryMismatch(f"epsilon LP ended with status {res.status}")
    return res.value, tuple(res.x[:k])


def locate_by_lp(generators, tau) -> PointLocation:
    eps, lam = epsilon_lp(generators, tau)
    if eps is None or eps < 0:
        tag = OUTSIDE
    elif eps == 0:
        tag = BOUNDARY
    else:
        tag = INTERIOR
    return PointLocation(tag, eps, weights=lam)


def locate(P: NewtonPolyhedron, ideal: MonomialIdeal, tau) -> PointLocation:
    """Classify tau as InIdeal / Outside / Boundary / Interior.

    Points outside the ideal are classified twice, once through the facet
    inequalities and once through the epsilon LP; the two must agree exactly.
    """
    tau = check_exponent(tau, P.dim)
    if ideal.nvars != P.dim:
        raise ValueError("ideal and polyhedron dimensions differ")
    gen = ideal.dominated_generator(tau)
    if gen is not None:
        return PointLocation(IN_IDEAL, generator=gen)
    by_facets = locate_by_facets(P, tau)
    by_lp = locate_by_lp(P.generators, tau)
    if by_facets.tag != by_lp.tag or by_facets.epsilon != by_lp.epsilon:
        raise GeometryMismatch(
            f"facet route says {by_facets.tag} ({by_facets.epsilon}), "
            f"LP route says {by_lp.tag} ({by_lp.epsilon}) for {tau}"
        )
    return PointLocation(
        by_facets.tag,
        by_facets.epsilon,
        tight=by_facets.tight,
        separating=by_facets.separating,
        weights=by_lp.weights,
    )


def _require_primary(ideal: MonomialIdeal) -> None:
    if not ideal.is_primary():
        raise NotPrimaryError(f"{ideal!r} is not primary (missing a pure power of some variable)")


def closure_generators(ideal: MonomialIdeal) -> MonomialIdeal:
    """Minimal generators of the ideal spanned by Gamma and the interior lattice points."""
    _require_primary(ideal)
    P = build_polyhedron(ideal)
    m = ideal.nvars
    bounds = [1 + max(g[j] for g in ideal.generators) for j in range(m)]
    while True:
        members = []
        for x in itertools.product(*(range(B + 1) for B in bounds)):
            if ideal.contains(x) or P.interior_contains(x):
                members.append(x)
        gens = MonomialIdeal(members, m).generators
        # saturation: no minimal generator may touch the outer slab of the box
        if all(g[j] < bounds[j] for g in gens for j in range(m)):
            return MonomialIdeal(gens, m)
        bounds = [2 * B for B in bounds]


def in_closure(ideal: MonomialIdeal, tau, P: NewtonPolyhedron | None = None) -> bool:
    if ideal.contains(tau):
        return True
    P = P or build_polyhedron(ideal)
    return P.interior_contains(tau)


@dataclass(frozen=True)
class PowerWitness:
    """z^(n tau) lies in I^theta via the generator multi-index ``alpha``."""

    n: int
    theta: int
    alpha: Tuple[int, ...]
    generators: Tuple[ExponentVector, ...] = field(default=(), compare=False)

    def check(self, tau) -> bool:
        if not (0 < self.n < self.theta) or sum(self.alpha) != self.theta:
            return False
        if len(self.alpha) != len(self.generators) or any(a < 0 for a in self.alpha):
            return False
        total = [sum(a * g[j] for a, g in zip(self.alpha, self.generators)) for j in range(len(tau))]
        return dominates([self.n * t for t in tau], total)


def max_power_index(generators, cap) -> Tuple[int, Tuple[int, ...]]:
    """Largest |alpha| with sum alpha_i g_i <= cap componentwise, and one maximizer."""
    gens = [tuple(g) for g in generators]

    @lru_cache(maxsize=None)
    def best(i, cap):
        if i == len(gens):
            return 0, ()
        g = gens[i]
        kmax = min((c // x for c, x in zip(cap, g) if x > 0), default=0)
        top = (-1, ())
        for k in range(kmax, -1, -1):
            rest = tuple(c - k * x for c, x in zip(cap, g))
            val, tail = best(i + 1, rest)
            if val + k > top[0]:
                top = (val + k, (k,) + tail)
        return top

    return best(0, tuple(cap))


def fractional_power_bound(generators, tau) -> Fraction:
    """max sum l_i subject to sum l_i g_i <= tau, l >= 0."""
    gens = list(generators)
    A_ub = [[g[j] for g in gens] for j in range(len(tau))]
    res = linprog([1] * len(gens), A_ub=A_ub, b_ub=list(tau))
    if res.status != OPTIMAL:
        raise GeometryMismatch(f"power bound LP ended with status {res.status}")
    return res.value


def power_witness(ideal: MonomialIdeal, tau, n_max: int = 64) -> Optional[PowerWitness]:
    """Smallest n <= n_max with z^(n tau) in I^theta for some theta > n."""
    tau = check_exponent(tau, ideal.nvars)
    if ideal.contains(tau):
        raise ValueError(f"{tau} already lies in the ideal")
    gens = ideal.generators
    s = fractional_power_bound(gens, tau)
    if s <= 1:
        return None
    n0 = max(1, math.ceil(1 / (s - 1)))
    for n in range(n0, n_max + 1):
        theta, alpha = max_power_index(gens, [n * t for t in tau])
        if theta > n:
            return PowerWitness(n, theta, alpha, gens)
    return None


@dataclass(frozen=True)
class SupportingNormal:
    normal: Tuple[int, ...]
    degree: int


def supporting_normal(P: NewtonPolyhedron, tau) -> Optional[SupportingNormal]:
    """Strictly positive integer normal a with a.g >= d on G and a.tau == d.

    Maximizes min_j a_j over normalized supporting normals at tau; returns
    None when every supporting normal has a zero entry.
    """
    tau = check_exponent(tau, P.dim)
    loc = locate_by_facets(P, tau)
    if loc.tag != BOUNDARY:
        raise ValueError(f"{tau} is {loc.tag}, not on the boundary")
    m = P.dim
    # variables: a (m), t; maximize t
    A_ub = []
    b_ub = []
    for j in range(m):
        A_ub.append([-int(i == j) for i in range(m)] + [1])
        b_ub.append(0)
    for g in P.generators:
        A_ub.append([t - x for x, t in zip(g, tau)] + [0])
        b_ub.append(0)
    A_eq = [[1] * m + [0]]
    res = linprog([0] * m + [1], A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1])
    if res.status != OPTIMAL or res.value <= 0:
        return None
    a = _primitive(res.x[:m])
    return SupportingNormal(a, _dot(a, tau))
