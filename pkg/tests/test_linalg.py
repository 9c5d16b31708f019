from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from foliage.linalg import (
    bareiss_rank,
    charpoly,
    deflate,
    det,
    inverse,
    nullspace,
    rank_by_minors,
    rank_mod,
    rational_roots,
)

entries = st.one_of(st.integers(-4, 4), st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3)))


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def S(M):
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in r]
                      for r in M])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_matches_sympy(r, c, data):
    M = data.draw(matrices(r, c))
    assert bareiss_rank(M) == S(M).rank() == rank_by_minors(M)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_det_and_charpoly(n, data):
    M = data.draw(matrices(n, n))
    assert det(M) == S(M).det()
    t = sp.Symbol("t")
    ref = sp.Poly(S(M).charpoly(t).as_expr(), t).all_coeffs()
    assert charpoly(M) == [Fraction(int(c.p), int(c.q)) for c in ref]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_nullspace(r, c, data):
    M = data.draw(matrices(r, c))
    basis = nullspace(M, c)
    assert len(basis) == c - bareiss_rank(M)
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)


def test_inverse_and_singular():
    M = [[2, 1], [1, 1]]
    assert inverse(M) == [[1, -1], [-1, 2]]
    with pytest.raises(ValueError):
        inverse([[1, 2], [2, 4]])


def test_rank_mod_sees_reduction():
    assert rank_mod([[1, 0], [0, 7]], 7) == 1
    assert rank_mod([[1, 0], [0, 7]], 11) == 2


def test_rational_roots_with_multiplicity():
    # (t - 1/2)^2 (t + 3) (t^2 + 1)
    t = sp.Symbol("t")
    cs = sp.Poly(sp.expand((t - sp.Rational(1, 2)) ** 2 * (t + 3) * (t ** 2 + 1)), t).all_coeffs()
    cs = [Fraction(int(c.p), int(c.q)) for c in cs]
    roots = rational_roots(cs)
    assert roots == [Fraction(-3), Fraction(1, 2), Fraction(1, 2)]
    assert deflate(cs, roots) == [1, 0, 1]
