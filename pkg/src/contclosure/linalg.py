"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np


def to_matrix(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots, T)`` where ``R`` holds the nonzero rows, ``pivots``
    their pivot columns, and ``T`` is the transform with ``R[i] = sum_k
    T[i][k] * rows[k]``.  Pivots are chosen leftmost-first with row swaps.
    Elimination runs fraction-free on integer rows; pivot rows are divided
    by their pivots at the end.
    """
    n = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    a, t = [], []
    for k, row in enumerate(rows):
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        a.append([int(x * den) for x in row])
        t.append([den if i == k else 0 for i in range(n)])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        t[r], t[p] = t[p], t[r]
        pr, pt = a[r], t[r]
        pv = pr[c]
        nz = [j for j, y in enumerate(pr) if y]
        nzt = [j for j, y in enumerate(pt) if y]
        for i in range(n):
            f = a[i][c]
            if i == r or f == 0:
                continue
            row, trow = a[i], t[i]
            if pv != 1:
                for j in range(ncols):
                    if row[j]:
                        row[j] *= pv
                for j in range(n):
                    if trow[j]:
                        trow[j] *= pv
            for j in nz:
                row[j] -= f * pr[j]
            for j in nzt:
                trow[j] -= f * pt[j]
            g = 0
            for x in row:
                if x:
                    g = math.gcd(g, x)
                    if g == 1:
                        break
            if g != 1:
                for x in trow:
                    if x:
                        g = math.gcd(g, x)
                        if g == 1:
                            break
            if g > 1:
                a[i] = [x // g for x in row]
                t[i] = [x // g for x in trow]
        pivots.append(c)
        r += 1
        if r == n:
            break
    out_a = []
    out_t = []
    for i, c in enumerate(pivots):
        pv = a[i][c]
        out_a.append([Fraction(x, pv) for x in a[i]])
        out_t.append([Fraction(x, pv) for x in t[i]])
    return out_a, pivots, out_t


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def solve_left(rows: Sequence[Sequence], target: Sequence) -> Optional[List[Fraction]]:
    """Find c with sum_k c[k] * rows[k] == target, or None if target is not in the row span."""
    target = [Fraction(x) for x in target]
    if not rows:
        return [] if all(x == 0 for x in target) else None
    r, pivots, t = rref(rows, len(target))
    coeffs = [target[p] for p in pivots]
    recon = [Fraction(0)] * len(target)
    for c, row in zip(coeffs, r):
        if c:
            recon = [x + c * y for x, y in zip(recon, row)]
    if recon != target:
        return None
    out = [Fraction(0)] * len(rows)
    for c, trow in zip(coeffs, t):
        if c:
            out = [x + c * y for x, y in zip(out, trow)]
    return out


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Solve a x = b; returns one solution (free variables set to zero) or None."""
    if not a:
        return None
    cols = list(zip(*a))
    return solve_left(cols, b)


_PRIME = 2_147_483_647


def full_rank_mod_p(rows: Sequence[Sequence[int]], p: int = _PRIME) -> bool:
    """Sufficient test for full row rank of an integer matrix.

    Rank over F_p never exceeds rank over Q, so a full rank mod p is an exact
    proof of full rank; a deficient result is inconclusive.
    """
    a = np.array([[int(x) % p for x in r] for r in rows], dtype=np.int64)
    n, ncols = a.shape
    r = 0
    for c in range(ncols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - (col[mask, None] * a[r][None, :]) % p) % p
        r += 1
        if r == n:
            break
    return r == n
