"""Shared test utilities.

oracle_rank is the independent elimination oracle: fraction-free Bareiss
over integers, sharing no code with the package's RREF.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from qnets import HPoint


def oracle_rank(rows) -> int:
    """Rank by Bareiss fraction-free elimination with column pivoting."""
    work = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        work.append([int(x * den) for x in fr])
    if not work:
        return 0
    nrows, ncols = len(work), len(work[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = None
        for k in range(r, nrows):
            if work[k][c] != 0:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        for k in range(r + 1, nrows):
            for cc in range(c + 1, ncols):
                work[k][cc] = (work[k][cc] * work[r][c] - work[k][c] * work[r][cc]) // prev
            work[k][c] = 0
        prev = work[r][c]
        r += 1
        if r == nrows:
            break
    return r


def oracle_det3(m) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def random_point(rng: random.Random, n: int, lo: int = -9, hi: int = 9) -> HPoint:
    while True:
        coords = [rng.randint(lo, hi) for _ in range(n + 1)]
        if any(coords):
            return HPoint(coords)


def random_invertible(rng: random.Random, size: int):
    """Random invertible rational matrix (checked by the Bareiss oracle)."""
    while True:
        m = [[Fraction(rng.randint(-5, 5)) for _ in range(size)] for _ in range(size)]
        if oracle_rank(m) == size:
            return m


def random_collinear(rng: random.Random, n: int, count: int) -> list[HPoint]:
    """Distinct random points on a random line in RP^n."""
    while True:
        a = random_point(rng, n)
        b = random_point(rng, n)
        pts = []
        for _ in range(count * 4):
            al, be = rng.randint(-9, 9), rng.randint(-9, 9)
            coords = [al * x + be * y for x, y in zip(a.coords, b.coords)]
            if not any(coords):
                continue
            p = HPoint(coords)
            if p not in pts:
                pts.append(p)
            if len(pts) == count:
                return pts


def random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-30, 30) or 1, rng.randint(1, 12))


def oracle_det(matrix) -> Fraction:
    """Determinant by recursive cofactor expansion (small matrices only)."""
    n = len(matrix)
    if n == 1:
        return Fraction(matrix[0][0])
    total = Fraction(0)
    for k in range(n):
        if matrix[0][k] == 0:
            continue
        minor = [row[:k] + row[k + 1 :] for row in matrix[1:]]
        total += (-1) ** k * Fraction(matrix[0][k]) * oracle_det(minor)
    return total
