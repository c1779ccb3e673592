"""Exact rational linear algebra underlying the projective kernel.

Matrices are immutable tuples of tuple rows over ``fractions.Fraction``.
Reduced row echelon form (unit pivots, pivot columns cleared above and
below) is the canonical representation used for subspace equality
throughout the package, so every routine here is deterministic: first
nonzero entry is always chosen as pivot, no heuristics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Row = tuple[Fraction, ...]
Matrix = tuple[Row, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_row(values: Iterable) -> Row:
    return tuple(Fraction(v) for v in values)


def _int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Rescale each row to primitive integers (row spaces are unchanged)."""
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        ints = [x.numerator * (den // x.denominator) for x in fr]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form of ``rows``.

    Returns the nonzero rows (unit pivots, pivot columns cleared) together
    with the pivot column indices.  Elimination is fraction-free over
    integers with per-row content reduction; pivots are normalized to 1
    only at the end.
    """
    work = _int_rows(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((k for k in range(r, len(work)) if work[k][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            work[r], work[pr] = work[pr], work[r]
        row_r = work[r]
        p = row_r[c]
        for k in range(len(work)):
            q = work[k][c]
            if k == r or q == 0:
                continue
            g = gcd(p, q)
            a, b = p // g, q // g
            new = [a * x - b * y for x, y in zip(work[k], row_r)]
            cg = 0
            for v in new:
                cg = gcd(cg, v)
            if cg > 1:
                new = [v // cg for v in new]
            work[k] = new
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = []
    for k in range(r):
        p = work[k][pivots[k]]
        out.append(tuple(Fraction(v, p) for v in work[k]))
    return tuple(out), tuple(pivots)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Canonical (RREF) basis of the right kernel ``{x : M x = 0}``."""
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis: list[list[Fraction]] = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return rref(basis, ncols)[0]


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a square matrix by exact Gaussian elimination."""
    n = len(rows)
    work = [[Fraction(x) for x in r] for r in rows]
    if any(len(r) != n for r in work):
        raise ValueError("determinant requires a square matrix")
    result = ONE
    for c in range(n):
        pr = next((k for k in range(c, n) if work[k][c] != 0), None)
        if pr is None:
            return ZERO
        if pr != c:
            work[c], work[pr] = work[pr], work[c]
            result = -result
        lead = work[c][c]
        result *= lead
        for k in range(c + 1, n):
            if work[k][c] != 0:
                f = work[k][c] / lead
                work[k] = [a - f * b for a, b in zip(work[k], work[c])]
    return result


def mat_vec(rows: Sequence[Sequence[Fraction]], vec: Sequence[Fraction]) -> Row:
    return tuple(sum((a * b for a, b in zip(row, vec)), ZERO) for row in rows)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def primitive(vec: Sequence[Fraction]) -> Row:
    """Integer-primitive representative of a nonzero rational vector.

    Denominators cleared, content divided out, first nonzero entry positive.
    """
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    ints = [int(v.numerator * (den // v.denominator)) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        g = -g
    return tuple(Fraction(v // g) for v in ints)
