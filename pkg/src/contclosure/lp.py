"""Dense two-phase simplex over exact rationals (Bland's rule, no cycling)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple] = None
    value: Optional[Fraction] = None


class _Tableau:
    def __init__(self, a, b, basis):
        self.a = a
        self.b = b
        self.basis = basis

    def pivot(self, r, c):
        a, b = self.a, self.b
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        b[r] *= inv
        for i in range(len(a)):
            f = a[i][c]
            if i != r and f != 0:
                row = a[r]
                a[i] = [x - f * y for x, y in zip(a[i], row)]
                b[i] -= f * b[r]
        self.basis[r] = c

    def optimize(self, cost, allowed):
        """Maximize cost . x over the current basic feasible solution."""
        while True:
            cb = [cost[j] for j in self.basis]
            enter = None
            for j in allowed:
                if j in self.basis:
                    continue
                red = cost[j] - sum(c * row[j] for c, row in zip(cb, self.a) if c)
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.a):
                if row[enter] > 0:
                    ratio = self.b[i] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], enter)


def linprog(c: Sequence, A_ub=None, b_ub=None, A_eq=None, b_eq=None, free: Sequence[int] = ()):
    """Maximize ``c . x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``.

    Variables are nonnegative except those listed in ``free``.
    """
    n = len(c)
    free = sorted(set(free))
    A_ub = [list(r) for r in (A_ub or [])]
    A_eq = [list(r) for r in (A_eq or [])]
    b_ub = list(b_ub or [])
    b_eq = list(b_eq or [])

    # columns: original n, negative parts of free vars, slacks, artificials
    nf = len(free)
    ns = len(A_ub)
    rows = []
    rhs = []
    for k, (row, bi) in enumerate(zip(A_ub, b_ub)):
        full = [Fraction(x) for x in row] + [-Fraction(row[j]) for j in free]
        full += [Fraction(int(s == k)) for s in range(ns)]
        rows.append(full)
        rhs.append(Fraction(bi))
    for row, bi in zip(A_eq, b_eq):
        full = [Fraction(x) for x in row] + [-Fraction(row[j]) for j in free]
        full += [Fraction(0)] * ns
        rows.append(full)
        rhs.append(Fraction(bi))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    nreal = n + nf + ns
    m = len(rows)
    for i in range(m):
        rows[i] += [Fraction(int(k == i)) for k in range(m)]
    tab = _Tableau(rows, rhs, [nreal + i for i in range(m)])

    phase1 = [Fraction(0)] * nreal + [Fraction(-1)] * m
    tab.optimize(phase1, range(nreal + m))
    if any(tab.b[i] != 0 for i in range(m) if tab.basis[i] >= nreal):
        return LPResult(INFEASIBLE)
    # drive zero-level artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(m):
        if tab.basis[i] >= nreal:
            col = next((j for j in range(nreal) if tab.a[i][j] != 0), None)
            if col is None:
                continue
            tab.pivot(i, col)
        keep.append(i)
    tab.a = [tab.a[i][:nreal] for i in keep]
    tab.b = [tab.b[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    cost = [Fraction(x) for x in c] + [-Fraction(c[j]) for j in free] + [Fraction(0)] * ns
    status = tab.optimize(cost, range(nreal))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    val = [Fraction(0)] * nreal
    for i, j in enumerate(tab.basis):
        val[j] = tab.b[i]
    x = val[:n]
    for k, j in enumerate(free):
        x[j] -= val[n + k]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, tuple(x), value)
