"""Rings of axes K[x_1, ..., x_k]/(x_i x_j, i != j) over the rationals.

Axes are indexed from 0 in the API and printed as x1, ..., xk.  Ideal
membership is decided in the local ring at the origin (equivalently in the
completion), where x_j^(t_j+1) belongs to any ideal of finite order t_j on
axis j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import linalg
from .poly import DimensionError, Polynomial

INF = math.inf


def _num(c):
    # integral values are kept as int: exact, and much faster than Fraction
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _strip(coeffs) -> tuple:
    coeffs = [_num(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class AxesElement:
    """c + p_1(x_1) + ... + p_k(x_k) with p_j(0) = 0.

    ``parts[j][e - 1]`` is the coefficient of x_j^e.
    """

    __slots__ = ("k", "c", "parts")

    def __init__(self, k: int, c=0, parts: Sequence[Sequence] | None = None):
        if k < 1:
            raise ValueError("need at least one axis")
        parts = list(parts) if parts is not None else []
        if len(parts) > k:
            raise DimensionError(f"{len(parts)} axis parts for {k} axes")
        parts += [()] * (k - len(parts))
        self.k = k
        self.c = _num(c)
        self.parts = tuple(_strip(p) for p in parts)

    @classmethod
    def axis(cls, j: int, k: int, coeff=1, power: int = 1) -> AxesElement:
        if power == 0:
            return cls(k, coeff)
        parts = [()] * k
        parts[j] = (0,) * (power - 1) + (coeff,)
        return cls(k, 0, parts)

    @classmethod
    def linear(cls, coeffs: Sequence) -> AxesElement:
        """sum_j coeffs[j] * x_j."""
        return cls(len(coeffs), 0, [(c,) for c in coeffs])

    def _check(self, other: AxesElement) -> None:
        if self.k != other.k:
            raise DimensionError(f"elements on {self.k} and {other.k} axes")

    def _lift(self, other) -> AxesElement:
        if isinstance(other, AxesElement):
            self._check(other)
            return other
        return AxesElement(self.k, other)

    def coeff(self, j: int, e: int):
        if e == 0:
            return self.c
        p = self.parts[j]
        return p[e - 1] if e <= len(p) else 0

    def is_zero(self) -> bool:
        return self.c == 0 and not any(self.parts)

    def degree(self) -> int:
        return max([len(p) for p in self.parts] + [0])

    def __add__(self, other):
        other = self._lift(other)
        parts = []
        for p, q in zip(self.parts, other.parts):
            n = max(len(p), len(q))
            parts.append([
                (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
            ])
        return AxesElement(self.k, self.c + other.c, parts)

    __radd__ = __add__

    def __neg__(self):
        return AxesElement(self.k, -self.c, [[-x for x in p] for p in self.parts])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        c, c2 = self.c, other.c
        parts = []
        for p, q in zip(self.parts, other.parts):
            # (c + p)(c2 + q) restricted to the axis, minus the constant c*c2
            if not p and not q:
                parts.append(())
                continue
            out = [0] * (len(p) + len(q))
            if c2:
                for i, a in enumerate(p):
                    out[i] += c2 * a
            if c:
                for i, b in enumerate(q):
                    out[i] += c * b
            if p and q:
                qnz = [(j, b) for j, b in enumerate(q) if b]
                for i, a in enumerate(p):
                    if a:
                        for j, b in qnz:
                            out[i + j + 1] += a * b
            parts.append(out)
        return AxesElement(self.k, c * c2, parts)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = AxesElement(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, AxesElement):
            return self.k == other.k and self.c == other.c and self.parts == other.parts
        if isinstance(other, (int, Fraction)):
            return self == AxesElement(self.k, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.c, self.parts))

    def valuation(self, j: int):
        """Order of c + p_j(x_j) at the origin; ``math.inf`` for the zero series."""
        if not 0 <= j < self.k:
            raise IndexError(f"axis {j} out of range for {self.k} axes")
        if self.c != 0:
            return 0
        for e, a in enumerate(self.parts[j], start=1):
            if a != 0:
                return e
        return INF

    def to_str(self) -> str:
        terms = []
        if self.c:
            terms.append((self.c, ""))
        for e in range(1, self.degree() + 1):
            for j in range(self.k):
                a = self.coeff(j, e)
                if a:
                    terms.append((a, f"x{j + 1}" + (f"^{e}" if e > 1 else "")))
        if not terms:
            return "0"
        out = ""
        for i, (a, mono) in enumerate(terms):
            mag = Fraction(abs(a))
            mag_s = str(mag.numerator) if mag.denominator == 1 else str(mag)
            body = mono if (mono and mag == 1) else (f"{mag_s}*{mono}" if mono else mag_s)
            if i == 0:
                out = ("-" if a < 0 else "") + body
            else:
                out += (" - " if a < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"AxesElement({self.k}, {self.to_str()!r})"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "c": str(self.c),
            "parts": [[str(x) for x in p] for p in self.parts],
        }

    @classmethod
    def from_json(cls, data: dict) -> AxesElement:
        return cls(int(data["k"]), Fraction(data["c"]), [[Fraction(x) for x in p] for p in data["parts"]])


def axis_valuation(u: AxesElement, j: int):
    return u.valuation(j)


def polynomial_image(f: Polynomial, images: Sequence[AxesElement]) -> AxesElement:
    """Image of f under z_j -> images[j]."""
    if len(images) != f.nvars:
        raise DimensionError(f"{len(images)} images for {f.nvars} variables")
    if not images:
        raise ValueError("no images given")
    k = images[0].k
    for im in images:
        if im.k != k:
            raise DimensionError("images live on different numbers of axes")
    powers = {}

    def power(j, e):
        if (j, e) not in powers:
            powers[(j, e)] = images[j] ** e
        return powers[(j, e)]

    total = AxesElement(k, 0)
    for alpha, c in f.items():
        term = AxesElement(k, c)
        for j, e in enumerate(alpha):
            if e:
                term = term * power(j, e)
        total = total + term
    return total


@dataclass(frozen=True)
class CanonicalAxesIdeal:
    """Ideal in pivot form.

    Generated by ``sum_j rows[i][j] * x_j^orders[j]`` (pivot entry 1 at
    ``pivots[i]``) together with x_j^(orders[j]+1) for every finite order.
    ``transform[i]`` expresses row ``i`` as a rational combination of the
    input generators' leading rows.
    """

    k: int
    orders: tuple
    unit: bool
    pivots: Tuple[int, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]
    transform: Tuple[Tuple[Fraction, ...], ...]
    inputs: Tuple[AxesElement, ...]

    @property
    def finite_axes(self) -> Tuple[int, ...]:
        return tuple(j for j, t in enumerate(self.orders) if t != INF)

    @property
    def lam(self) -> dict:
        """Lambda coefficients {(pivot axis, non-pivot axis): value}."""
        out = {}
        for p, row in zip(self.pivots, self.rows):
            for j in self.finite_axes:
                if j not in self.pivots and row[j] != 0:
                    out[(p, j)] = row[j]
        return out

    def generators(self) -> list:
        """Canonical generators: pivot rows first, then the x_j^(t_j+1)."""
        if self.unit:
            return [AxesElement(self.k, 1)]
        gens = []
        for row in self.rows:
            g = AxesElement(self.k, 0)
            for j in self.finite_axes:
                if row[j]:
                    g = g + AxesElement.axis(j, self.k, row[j], self.orders[j])
            gens.append(g)
        for j in self.finite_axes:
            gens.append(AxesElement.axis(j, self.k, 1, self.orders[j] + 1))
        return gens

    def realized_rows(self) -> list:
        """Each pivot row as an explicit combination of the input generators."""
        out = []
        for trow in self.transform:
            g = AxesElement(self.k, 0)
            for w, h in zip(trow, self.inputs):
                if w:
                    g = g + h * w
            out.append(g)
        return out


def ideal_orders(gens: Sequence[AxesElement]) -> tuple:
    k = gens[0].k
    return tuple(min(g.valuation(j) for g in gens) for j in range(k))


def canonical_form(gens: Sequence[AxesElement]) -> CanonicalAxesIdeal:
    gens = tuple(gens)
    if not gens:
        raise ValueError("empty generator list")
    k = gens[0].k
    for g in gens:
        if g.k != k:
            raise DimensionError("generators live on different numbers of axes")
    if any(g.c != 0 for g in gens):
        return CanonicalAxesIdeal(k, (0,) * k, True, (), (), (), gens)
    orders = ideal_orders(gens)
    lead = [
        [g.coeff(j, t) if t != INF else Fraction(0) for j, t in enumerate(orders)]
        for g in gens
    ]
    rows, pivots, transform = linalg.rref(lead, k)
    return CanonicalAxesIdeal(
        k, orders, False, tuple(pivots),
        tuple(tuple(r) for r in rows), tuple(tuple(t) for t in transform), gens,
    )


@dataclass(frozen=True)
class AxesMembership:
    """Outcome of an axes-ring membership test.

    For members, ``f == sum combination[g] * inputs[g] + remainder`` where the
    remainder has order > t_j on every finite axis and vanishes on the others.
    """

    member: bool
    reason: str
    axis: Optional[int] = None
    coefficients: Tuple[Fraction, ...] = ()
    combination: Tuple[Fraction, ...] = ()
    remainder: Optional[AxesElement] = None

    def __bool__(self):
        return self.member


def _above_orders(u: AxesElement, orders) -> bool:
    for j, t in enumerate(orders):
        if t == INF:
            if u.valuation(j) != INF:
                return False
        elif u.valuation(j) <= t:
            return False
    return True


def ideal_membership(f: AxesElement, ideal: CanonicalAxesIdeal) -> AxesMembership:
    if f.k != ideal.k:
        raise DimensionError(f"element on {f.k} axes, ideal on {ideal.k}")
    if ideal.unit:
        return AxesMembership(True, "unit ideal")
    for j, t in enumerate(ideal.orders):
        v = f.valuation(j)
        if t == INF and v != INF:
            return AxesMembership(False, "nonzero on an axis where the ideal vanishes", j)
        if t != INF and v < t:
            return AxesMembership(False, "valuation below the ideal order", j)
    zero = tuple(Fraction(0) for _ in ideal.inputs)
    if all(f.valuation(j) > ideal.orders[j] for j in ideal.finite_axes):
        return AxesMembership(True, "valuations strictly exceed orders",
                              coefficients=tuple(Fraction(0) for _ in ideal.rows),
                              combination=zero, remainder=f)
    beta = [f.coeff(j, t) if t != INF else Fraction(0) for j, t in enumerate(ideal.orders)]
    coeffs = [beta[p] for p in ideal.pivots]
    for j in ideal.finite_axes:
        want = sum((c * row[j] for c, row in zip(coeffs, ideal.rows)), Fraction(0))
        if want != beta[j]:
            return AxesMembership(False, "leading coefficients outside the row space", j,
                                  coefficients=tuple(coeffs))
    combo = [Fraction(0)] * len(ideal.inputs)
    for c, trow in zip(coeffs, ideal.transform):
        if c:
            combo = [x + c * w for x, w in zip(combo, trow)]
    rem = f
    for w, g in zip(combo, ideal.inputs):
        if w:
            rem = rem - g * w
    assert _above_orders(rem, ideal.orders), "remainder not absorbed by x_j^(t_j+1)"
    return AxesMembership(True, "leading coefficients in the row space",
                          coefficients=tuple(coeffs), combination=tuple(combo), remainder=rem)


def check_combination(f: AxesElement, gens: Sequence[AxesElement], combination: Sequence) -> bool:
    """Replay a membership certificate using ring arithmetic only."""
    gens = list(gens)
    if len(combination) != len(gens):
        return False
    if any(g.c != 0 for g in gens):
        return True
    rem = f
    for w, g in zip(combination, gens):
        rem = rem - g * Fraction(w)
    return _above_orders(rem, ideal_orders(gens))
