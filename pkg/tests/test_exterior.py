"""Exterior calculus against the alternating-multilinear definition (sympy oracle)."""
import itertools
from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SYMS, fields, forms, polys, to_sympy
from foliage.exterior import (
    PForm,
    PVec,
    exterior_derivative,
    interior_product,
    jet_at,
    lie_bracket,
    lie_derivative,
    pullback,
    radial_field,
    rotational,
    volume_form,
    wedge,
)
from foliage.ratpoly import Poly
from foliage.text import parse_form, parse_poly, parse_vector_field

N = 3
VECS = [(1, 2, -1), (0, 3, 5), (2, -1, 4), (1, 1, 1)]


def apply_form(a: PForm, vecs):
    """a(v1, ..., vq) as a sympy expression, from the determinant definition."""
    out = sp.Integer(0)
    for I, c in a.items():
        M = sp.Matrix([[v[i] for v in vecs] for i in I])
        out += to_sympy(c) * (M.det() if I else 1)
    return sp.expand(out)


def sign(perm):
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def oracle_wedge(a, b, vecs):
    p, q = a.formdeg, b.formdeg
    tot = sp.Integer(0)
    for perm in itertools.permutations(range(p + q)):
        vs = [vecs[i] for i in perm]
        tot += sign(perm) * apply_form(a, vs[:p]) * apply_form(b, vs[p:])
    return sp.expand(tot / (factorial(p) * factorial(q)))


def directional(expr, v):
    return sp.expand(sum(vi * sp.diff(expr, SYMS[i]) for i, vi in enumerate(v)))


def oracle_d(a, vecs):
    return sp.expand(sum((-1) ** i * directional(apply_form(a, vecs[:i] + vecs[i + 1:]), vecs[i])
                         for i in range(len(vecs))))


def field_sympy(X: PVec):
    return [to_sympy(c) for c in X.comps]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_wedge_matches_definition(p, q, data):
    if p + q > N:
        return
    a, b = data.draw(forms(N, p)), data.draw(forms(N, q))
    assert apply_form(wedge(a, b), VECS[: p + q]) == oracle_wedge(a, b, VECS[: p + q])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.data())
def test_d_matches_definition(q, data):
    a = data.draw(forms(N, q))
    assert apply_form(exterior_derivative(a), VECS[: q + 1]) == oracle_d(a, VECS[: q + 1])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.data())
def test_interior_product_contracts_first_slot(q, data):
    a, X = data.draw(forms(N, q)), data.draw(fields(N))
    got = apply_form(interior_product(X, a), VECS[: q - 1])
    assert got == apply_form(a, [field_sympy(X)] + VECS[: q - 1])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.data())
def test_dd_is_zero(q, data):
    assert exterior_derivative(exterior_derivative(data.draw(forms(N, q)))).is_zero()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_graded_leibniz_and_commutativity(p, q, data):
    if p + q > N:
        return
    a, b = data.draw(forms(N, p)), data.draw(forms(N, q))
    lhs = exterior_derivative(wedge(a, b))
    rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)).scale((-1) ** p)
    assert lhs == rhs
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (p * q))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.data())
def test_interior_is_antiderivation(p, q, data):
    if p + q > N:
        return
    a, b, X = data.draw(forms(N, p)), data.draw(forms(N, q)), data.draw(fields(N))
    lhs = interior_product(X, wedge(a, b))
    rhs = wedge(interior_product(X, a), b) + wedge(a, interior_product(X, b)).scale((-1) ** p)
    assert lhs == rhs


@settings(max_examples=20, deadline=None)
@given(fields(N), fields(N))
def test_lie_bracket_matches_sympy(X, Y):
    xs, ys = field_sympy(X), field_sympy(Y)
    ref = [sp.expand(sum(xs[j] * sp.diff(ys[i], SYMS[j]) - ys[j] * sp.diff(xs[i], SYMS[j]) for j in range(N)))
           for i in range(N)]
    assert field_sympy(lie_bracket(X, Y)) == ref


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2), st.data())
def test_lie_derivative_commutes_with_d(q, data):
    a, X = data.draw(forms(N, q)), data.draw(fields(N))
    assert exterior_derivative(lie_derivative(X, a)) == lie_derivative(X, exterior_derivative(a))


def test_lie_derivative_of_function_is_directional():
    f = parse_poly("x0^2*x1 + x2", 3)
    X = parse_vector_field("(x1)*d/dx0 + (x0)*d/dx2", 3)
    got = lie_derivative(X, PForm.function(f))
    assert to_sympy(got[()]) == directional(to_sympy(f), field_sympy(X))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2), st.data())
def test_pullback_commutes_with_d_and_wedge(q, data):
    a = data.draw(forms(N, q))
    b = data.draw(forms(N, 1))
    f = [data.draw(polys(2, 2, 3)) for _ in range(N)]
    assert pullback(f, exterior_derivative(a)) == exterior_derivative(pullback(f, a))
    if q + 1 <= N:
        assert pullback(f, wedge(a, b)) == wedge(pullback(f, a), pullback(f, b))


def test_pullback_by_linear_map_scales_volume_by_det():
    T = [[2, 1, 0], [0, 1, 3], [1, 0, 1]]
    x = Poly.variables(3)
    f = [sum((x[j].scale(T[i][j]) for j in range(3)), Poly.zero(3)) for i in range(3)]
    assert pullback(f, volume_form(3)) == volume_form(3).scale(sp.Matrix(T).det())


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_rotational_definition(data):
    a = data.draw(forms(4, 2))
    Z = rotational(a)
    assert interior_product(Z, volume_form(4)) == exterior_derivative(a)


def test_rotational_of_area_form_example():
    # on C^2, a = f (0-form): da = i_Z(dx0^dx1) gives Z = (f_1, -f_0)
    f = parse_poly("x0^2*x1", 2)
    Z = rotational(PForm.function(f))
    assert Z == PVec([f.partial(1), -f.partial(0)])


def test_rotational_needs_codim_two():
    with pytest.raises(ValueError):
        rotational(PForm.zero(4, 1))


def test_jet_and_shift():
    a = parse_form("(x0^2*x1 + x2)*dx0^dx1", 3)
    j = jet_at(a, (1, 2, 0), 1)
    c = j.body[(0, 1)]
    # c(y) = (1+y0)^2 (2+y1) + y2 truncated to degree 1
    assert c == parse_poly("4*x0 + x1 + x2 + 2", 3)


def test_radial_contracts_volume_and_euler():
    R = radial_field(3)
    assert lie_derivative(R, volume_form(3)) == volume_form(3).scale(3)
    c = radial_field(3, center=(1, Fraction(1, 2), 0))
    assert c.evaluate((1, Fraction(1, 2), 0)) == (0, 0, 0)


def test_mismatched_nvars_rejected():
    with pytest.raises(ValueError):
        wedge(PForm.zero(3, 1), PForm.zero(4, 1))
    with pytest.raises(ValueError):
        interior_product(radial_field(3), PForm.function(Poly.one(3)))
