"""Shared independent oracles and random-input helpers for the test suite.

The determinant and rank oracles deliberately avoid the library's
elimination code: determinants come from the Leibniz permutation
expansion and ranks from exhaustive minor search, so they can vouch for
the fast implementations.
"""

import random
from fractions import Fraction
from itertools import combinations, permutations

from kzsolve.exactalg import GaussianRational, Matrix


def perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def leibniz_det(M: Matrix) -> GaussianRational:
    """Determinant by direct permutation expansion (independent oracle)."""
    assert M.rows == M.cols
    n = M.rows
    total = GaussianRational(0)
    for p in permutations(range(n)):
        term = GaussianRational(perm_sign(p))
        for i in range(n):
            term = term * M[i, p[i]]
        total = total + term
    return total


def brute_rank(M: Matrix) -> int:
    """Rank as the largest size of a nonzero minor (independent oracle)."""
    n, m = M.rows, M.cols
    for size in range(min(n, m), 0, -1):
        for rows in combinations(range(n), size):
            for cols in combinations(range(m), size):
                sub = Matrix([[M[i, j] for j in cols] for i in rows])
                if not leibniz_det(sub).is_zero():
                    return size
    return 0


def random_rational(rng: random.Random, span: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_scalar(rng: random.Random, span: int = 6, real_only=False) -> GaussianRational:
    re = random_rational(rng, span)
    if real_only or rng.random() < 0.5:
        return GaussianRational(re)
    return GaussianRational(re, random_rational(rng, span))


def random_points(rng: random.Random, count: int = 3, span: int = 6):
    """Distinct Gaussian-rational pole locations."""
    while True:
        pts = [random_scalar(rng, span) for _ in range(count)]
        ok = all(
            not (pts[a] - pts[b]).is_zero()
            for a in range(count)
            for b in range(a + 1, count)
        )
        if ok:
            return pts


def generic_points(rng: random.Random, span: int = 6):
    """Distinct triple avoiding the degenerate locus 2*z2 = z1 + z3.

    On that locus the four explicit columns are linearly dependent (the
    fourth is a multiple of the third), so tests of generic independence
    must sample away from it.
    """
    while True:
        z1, z2, z3 = random_points(rng, 3, span)
        if not (z2 + z2 - z1 - z3).is_zero():
            return [z1, z2, z3]


def random_matrix(rng: random.Random, n: int, span: int = 4) -> Matrix:
    return Matrix(
        [[random_scalar(rng, span) for _ in range(n)] for _ in range(n)]
    )
