"""Small exact linear algebra over Q (and over Z/p)."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt, lcm
from typing import List, Optional, Sequence

Matrix = List[List[Fraction]]


def _as_fractions(M) -> Matrix:
    return [[Fraction(x) for x in row] for row in M]


def _integer_rows(M) -> List[List[int]]:
    """Scale each row by the lcm of its denominators (rank and det up to a unit)."""
    out = []
    for row in _as_fractions(M):
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(M) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    A = _integer_rows(M)
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == rows:
            break
    return r


rank = bareiss_rank


def det(M) -> Fraction:
    A = _as_fractions(M)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    sign, result = 1, Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        result *= p
        for i in range(c + 1, n):
            f = A[i][c] / p
            if f:
                for j in range(c, n):
                    A[i][j] -= f * A[c][j]
    return sign * result


def rank_by_minors(M) -> int:
    """Largest r with a nonzero r x r minor (a slow independent cross-check)."""
    A = _as_fractions(M)
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    for r in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), r):
            for ci in combinations(range(cols), r):
                if det([[A[i][j] for j in ci] for i in ri]):
                    return r
    return 0


def rref(M) -> tuple:
    A = _as_fractions(M)
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def nullspace(M, ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of ``{v : M v = 0}``."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    A, pivots = rref(M)
    n = len(A[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(A, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def charpoly(M) -> List[Fraction]:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(t I - M)`` (Faddeev-LeVerrier)."""
    A = _as_fractions(M)
    n = len(A)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A Mk + c_{k-1} I ; c_k = -tr(A Mk) / k
        c_prev = coeffs[-1]
        for i in range(n):
            Mk[i][i] += c_prev
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(AM[i][i] for i in range(n)) / k)
        Mk = AM
    return coeffs


def inverse(T) -> List[List[Fraction]]:
    """Inverse of a square rational matrix (ValueError when singular)."""
    n = len(T)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(T)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [u - f * v for u, v in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def trace(M) -> Fraction:
    return sum((Fraction(M[i][i]) for i in range(len(M))), Fraction(0))


def rank_mod(M, prime: int) -> int:
    A = [[x % prime for x in row] for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, prime)
        A[r] = [(x * inv) % prime for x in A[r]]
        for i in range(r + 1, rows):
            f = A[i][c]
            if f:
                A[i] = [(x - f * y) % prime for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------------
# Univariate helpers (coefficient lists, highest degree first)
# ---------------------------------------------------------------------------

def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _horner(coeffs, x):
    v = Fraction(0)
    for c in coeffs:
        v = v * x + c
    return v


def _synthetic_div(coeffs, r):
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * r)
    return out


def rational_roots(coeffs: Sequence) -> List[Fraction]:
    """Rational roots with multiplicity of a polynomial given highest-degree first."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs:
        raise ValueError("zero polynomial has every root")
    roots: List[Fraction] = []
    while len(cs) > 1 and cs[-1] == 0:
        roots.append(Fraction(0))
        cs.pop()
    if len(cs) <= 1:
        return roots
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    cands = set()
    for p in _divisors(ints[-1]):
        for q in _divisors(ints[0]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    for r in sorted(cands):
        while len(cs) > 1 and _horner(cs, r) == 0:
            roots.append(r)
            cs = _synthetic_div(cs, r)
    return sorted(roots)


def deflate(coeffs: Sequence, roots: Sequence) -> List[Fraction]:
    cs = [Fraction(c) for c in coeffs]
    for r in roots:
        if _horner(cs, r) != 0:
            raise ValueError(f"{r} is not a root")
        cs = _synthetic_div(cs, r)
    return cs
