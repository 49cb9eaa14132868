"""Sparse multivariate polynomials over the rationals and monomial ideals.

Exponent vectors are plain tuples of nonnegative ints.  A polynomial is a
mapping from exponent vectors to nonzero :class:`fractions.Fraction`
coefficients; all values are treated as immutable once built.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

ExponentVector = Tuple[int, ...]


class DimensionError(ValueError):
    """Raised when operands live in rings with different numbers of variables."""


class NotPrimaryError(ValueError):
    """Raised when a closure operation needs a primary monomial ideal."""


def check_exponent(alpha: Sequence[int], m: int | None = None) -> ExponentVector:
    alpha = tuple(int(a) for a in alpha)
    if not alpha:
        raise ValueError("exponent vector must have at least one entry")
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in {alpha}")
    if m is not None and len(alpha) != m:
        raise DimensionError(f"exponent {alpha} has length {len(alpha)}, expected {m}")
    return alpha


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff a >= b componentwise."""
    return all(x >= y for x, y in zip(a, b))


def degree_of(alpha: Sequence[int]) -> int:
    return sum(alpha)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None, nvars: int):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: Dict[ExponentVector, Fraction] = {}
        for alpha, c in (terms or {}).items():
            alpha = check_exponent(alpha, nvars)
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
                if not clean[alpha]:
                    del clean[alpha]
        self._terms = clean
        self.nvars = nvars
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> Polynomial:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff=1) -> Polynomial:
        alpha = check_exponent(alpha)
        return cls({alpha: coeff}, len(alpha))

    @classmethod
    def variable(cls, j: int, nvars: int) -> Polynomial:
        e = [0] * nvars
        e[j] = 1
        return cls({tuple(e): 1}, nvars)

    # inspection

    @property
    def terms(self) -> Dict[ExponentVector, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def support(self) -> list:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        """Single term with coefficient 1."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(a) for a in self._terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(a) for a in self._terms}
        if len(degs) > 1:
            return False
        if d is None or not degs:
            return True
        return degs == {d}

    def _check(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise DimensionError(f"polynomials in {self.nvars} and {other.nvars} variables")

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        self._check(other)
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            out[alpha] = out.get(alpha, Fraction(0)) + c
        return Polynomial(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({a: -c for a, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial({a: c * v for a, v in self._terms.items()}, self.nvars)
        self._check(other)
        out: Dict[ExponentVector, Fraction] = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, Fraction(0)) + c * d
        return Polynomial(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == Polynomial.constant(other, self.nvars)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"

    # evaluation and substitution

    def evaluate(self, point: Sequence):
        """Evaluate at a point; exact for rational coordinates, float/complex otherwise."""
        if len(point) != self.nvars:
            raise DimensionError(f"point of length {len(point)} for {self.nvars} variables")
        exact = all(isinstance(x, (int, Fraction)) for x in point)
        if exact:
            point = [Fraction(x) for x in point]
            total = Fraction(0)
        else:
            total = 0j if any(isinstance(x, complex) for x in point) else 0.0
        for alpha, c in self._terms.items():
            term = c if exact else float(c)
            for x, e in zip(point, alpha):
                if e:
                    term = term * x ** e
            total += term
        return total

    def substitute_powers(self, delta: Sequence[int]) -> Polynomial:
        """Replace every z_j by z_j**delta_j."""
        delta = tuple(int(x) for x in delta)
        if len(delta) != self.nvars:
            raise DimensionError("substitution vector has wrong length")
        if any(x <= 0 for x in delta):
            raise ValueError("substitution exponents must be positive")
        return Polynomial(
            {tuple(d * a for d, a in zip(delta, alpha)): c for alpha, c in self._terms.items()},
            self.nvars,
        )

    # printing

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = default_names(self.nvars)
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=lambda a: (-sum(a), tuple(-x for x in a)))
        parts = []
        for alpha in keys:
            c = self._terms[alpha]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, alpha) if e
            )
            mag = abs(c)
            if not mono:
                body = _frac_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_frac_str(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def default_names(m: int) -> list:
    if m == 2:
        return ["z", "w"]
    return [f"z{j + 1}" for j in range(m)]


def monomial_str(alpha: Sequence[int], names: Sequence[str] | None = None) -> str:
    return Polynomial.monomial(alpha).to_str(names)


def substitute_powers(f: Polynomial, delta: Sequence[int]) -> Polynomial:
    return f.substitute_powers(delta)


def evaluate(f: Polynomial, point: Sequence):
    return f.evaluate(point)


# monomial ideals

def minimalize(points: Iterable[Sequence[int]]) -> list:
    """Minimal elements of a finite set of exponent vectors, in descending lex order."""
    pts = sorted(set(tuple(p) for p in points), key=lambda a: (sum(a), a))
    kept: list = []
    for p in pts:
        if not any(dominates(p, q) for q in kept):
            kept.append(p)
    return sorted(kept, reverse=True)


class MonomialIdeal:
    """Monomial ideal stored by its minimal generator exponents."""

    __slots__ = ("generators", "nvars")

    def __init__(self, generators: Iterable[Sequence[int]], nvars: int | None = None):
        gens = [check_exponent(g) for g in generators]
        if not gens:
            raise ValueError("a monomial ideal needs at least one generator")
        m = nvars if nvars is not None else len(gens[0])
        for g in gens:
            if len(g) != m:
                raise DimensionError(f"generator {g} does not have {m} entries")
        self.generators: Tuple[ExponentVector, ...] = tuple(minimalize(gens))
        self.nvars = m

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial]) -> MonomialIdeal:
        gens = []
        for p in polys:
            if len(p.support()) != 1:
                raise ValueError(f"{p.to_str()} is not a monomial")
            gens.append(p.support()[0])
        return cls(gens, polys[0].nvars if polys else None)

    def contains(self, tau: Sequence[int]) -> bool:
        tau = check_exponent(tau, self.nvars)
        return any(dominates(tau, g) for g in self.generators)

    def dominated_generator(self, tau: Sequence[int]):
        for g in self.generators:
            if dominates(tau, g):
                return g
        return None

    def is_primary(self) -> bool:
        for j in range(self.nvars):
            if not any(g[j] > 0 and sum(g) == g[j] for g in self.generators):
                return False
        return True

    def pure_powers(self) -> list:
        """Exponent c_j of the pure power z_j^c_j for each variable (None if absent)."""
        out = []
        for j in range(self.nvars):
            cands = [g[j] for g in self.generators if g[j] > 0 and sum(g) == g[j]]
            out.append(min(cands) if cands else None)
        return out

    def polynomials(self) -> list:
        return [Polynomial.monomial(g) for g in self.generators]

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"MonomialIdeal({list(self.generators)})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return ", ".join(monomial_str(g, names) for g in self.generators)


def monomial_ideal_contains(ideal: MonomialIdeal, tau: Sequence[int]) -> bool:
    return ideal.contains(tau)


def is_primary(ideal: MonomialIdeal) -> bool:
    return ideal.is_primary()
