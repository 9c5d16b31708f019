from fractions import Fraction

import pytest
import sympy as sp

from foliage import fixtures as fx
from foliage.ratmap import (
    RationalMap,
    binomial_witnesses,
    fiber_membership,
    indeterminacy_witness_check,
    is_critical_point,
    is_generic_at,
    is_indeterminacy_point,
    normalize_point,
    pair_genericity_check,
    projectively_equal,
)
from foliage.text import parse_poly


def test_projective_equality():
    assert projectively_equal((1, 2, 3), (-2, -4, -6))
    assert not projectively_equal((1, 2, 3), (1, 2, 4))
    assert normalize_point((0, 2, 4)) == (0, 1, 2)


def test_validation():
    good = fx.binomial_map(2)
    assert good.validate() and good.nu == 2 and (good.n, good.m) == (3, 2)
    bad = RationalMap([parse_poly(t, 4) for t in ("x0*x1", "x0*x2", "x0*x3")])
    assert not bad.validate()
    assert any("common factor" in e for e in bad.validation_errors())
    mixed = RationalMap([parse_poly(t, 4) for t in ("x0^2", "x1", "x2^2")], nu=2)
    assert not mixed.validate()


def test_quadric_witnesses_complete():
    f = fx.binomial_map(2)
    pts, total = binomial_witnesses(f)
    assert total == 8 and len(pts) == 8
    rep = indeterminacy_witness_check(f, pts)
    assert rep.complete and rep.all_generic and rep.status == "complete"


def test_quadric_witnesses_match_sympy_solutions():
    x = sp.symbols("x1:4")
    sols = sp.solve([xi ** 2 - 1 for xi in x], x, dict=True)
    ref = {(1,) + tuple(int(s[xi]) for xi in x) for s in sols}
    pts, _ = binomial_witnesses(fx.binomial_map(2))
    assert {tuple(int(c) for c in p) for p in pts} == ref


def test_cubic_witnesses_partial():
    f = fx.binomial_map(3)
    pts, total = binomial_witnesses(f)
    assert total == 27 and pts == [(1, 1, 1, 1)]
    rep = indeterminacy_witness_check(f, pts)
    assert not rep.complete and rep.status == "partial witnesses (1 of 27)" and rep.all_generic


def test_witness_check_rejects_bad_input():
    f = fx.binomial_map(2)
    with pytest.raises(ValueError):
        indeterminacy_witness_check(f, [(1, 1, 1, 1), (2, 2, 2, 2)])
    with pytest.raises(ValueError):
        indeterminacy_witness_check(f, [(1, 2, 1, 1)])


def test_nongeneric_point_detected():
    # F = (x1^2 - x0^2, x2^2 - x0^2, x1*x3 - x0*x3 + ...) made singular at [1:1:1:1]
    f = RationalMap([parse_poly(t, 4) for t in
                     ("x1^2 - x0^2", "x2^2 - x0^2", "x3^2 - 2*x0*x3 + x0^2")])
    assert is_indeterminacy_point(f, (1, 1, 1, 1))
    assert not is_generic_at(f, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        is_generic_at(f, (1, 2, 3, 4))


def test_fibers_and_critical_points():
    f = fx.binomial_map(2)
    for p in fx.kupka_fiber_points():
        assert fiber_membership(f, p, (0, 0, 1))
        assert not is_critical_point(f, p, 0)
    assert is_critical_point(f, (1, 0, 0, 3), 0)
    assert not is_critical_point(f, (1, 0, 2, 3), 0)
    rep = pair_genericity_check(f, [(0, 0, 1)], fx.kupka_fiber_points())
    assert rep["ok"]


def test_map_evaluation():
    f = fx.binomial_map(2)
    assert f((1, 2, 3, Fraction(1, 2))) == (3, 8, Fraction(-3, 4))
