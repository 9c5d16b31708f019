from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fields, forms, homogeneous_polys, to_sympy
from foliage import fixtures as fx
from foliage.exterior import PForm, PVec, radial_field
from foliage.foliation import EXACT, Foliation1D, omega_from_1d, probabilistic, pullback_foliation
from foliage.ratpoly import Poly
from foliage.singular import (
    PointReport,
    analyze_point,
    classify_singularity_1d,
    conic_diagnose,
    conic_plane_restriction,
    is_conic_ngk_at,
    is_prime,
    isolated_zero,
    kupka_at,
    kupka_on_fiber_check,
    lie_identity_check,
    linear_part_info,
    macaulay_isolated,
    normal_type_at,
    quasi_homogeneity_check,
    rotational_linear_part,
    sing_count_p2,
    transversal_type_at,
    verify_tangent_symmetry,
)
from foliage.text import parse_poly, parse_vector_field

PROB = probabilistic(2 ** 61 - 1, 2, seed=11)


# ---------------------------------------------------------------------------
# sympy oracle: singular points of a foliation on P^2 with multiplicity, from
# Groebner bases in the three affine charts and inclusion-exclusion
# ---------------------------------------------------------------------------

def _quotient_dim(polys, gens):
    G = sp.groebner(polys, *gens, order="grevlex")
    if list(G) == [1]:
        return 0
    leads = [sp.Poly(g, *gens).monoms(order="grevlex")[0] for g in G]
    count, deg = 0, 0
    while True:
        layer = 0
        for e in product(range(deg + 1), repeat=len(gens)):
            if sum(e) == deg and not any(all(a >= b for a, b in zip(e, l)) for l in leads):
                layer += 1
        count += layer
        if layer == 0:
            return count
        deg += 1
        assert deg < 60, "ideal is not zero-dimensional"


def oracle_sing_count(X: PVec) -> int:
    x = sp.symbols("x0:3")
    P = [to_sympy(c) for c in X.comps]
    minors = [sp.expand(x[i] * P[j] - x[j] * P[i]) for i, j in combinations(range(3), 2)]
    t = sp.symbols("t0:3")

    def count(charts):
        # points with x_c != 0 for every c in charts, computed in the chart of charts[0]
        c0 = charts[0]
        sub = {x[c0]: 1}
        gens = [x[i] for i in range(3) if i != c0]
        eqs = [m.subs(sub) for m in minors]
        for k, c in enumerate(charts[1:]):
            gens.append(t[k])
            eqs.append(t[k] * x[c] - 1)
        return _quotient_dim(eqs, gens)

    total = 0
    for r in (1, 2, 3):
        for S in combinations(range(3), r):
            total += (-1) ** (r + 1) * count(list(S))
    return total


@pytest.mark.parametrize("d", [2, 3])
def test_sing_count_acceptance(d):
    G = fx.acceptance_foliation(d)
    assert sing_count_p2(G) == d * d + d + 1
    assert sing_count_p2(G, seed=5) == d * d + d + 1


def test_sing_count_matches_oracle():
    for G in (fx.acceptance_foliation(2), fx.diagonal_foliation()):
        assert sing_count_p2(G) == oracle_sing_count(G.X)


def test_sing_count_with_multiplicity():
    # X = (x1^2, x2^2, x0^2): a degree-2 field, total count with multiplicity is 7
    X = PVec([parse_poly(t, 3) for t in ("x1^2", "x2^2", "x0^2")])
    assert sing_count_p2(X) == oracle_sing_count(X) == 7


def test_sing_count_rejects_curves_of_singularities():
    x = Poly.variables(3)
    with pytest.raises(ValueError):
        sing_count_p2(PVec([x[0] * x[2], x[1] * x[2], x[2] * x[2] + x[0] * x[0] - x[0] * x[0]]))


# ---------------------------------------------------------------------------

def test_linear_part_and_classification():
    cl = classify_singularity_1d([[1, -1], [1, 1]])
    assert cl.nondegenerate and cl.kupka_type and cl.hyperbolic and cl.mode == "exact"
    assert classify_singularity_1d([[1, 0], [0, 2]]).hyperbolic is False
    center = classify_singularity_1d([[0, -1], [1, 0]])
    assert center.hyperbolic is False and not center.kupka_type
    assert classify_singularity_1d([[0, 1], [0, 0]]).nondegenerate is False
    assert linear_part_info([[0, 1], [0, 0]]).is_nilpotent


def test_classification_numerical_path():
    # charpoly t^3 - 2 has one rational-free cubic: eigenvalues 2^(1/3) * cube roots of 1
    M = [[0, 0, 2], [1, 0, 0], [0, 1, 0]]
    cl = classify_singularity_1d(M)
    assert cl.mode == "numerical" and cl.hyperbolic is True


def test_classify_field_at_point():
    X = parse_vector_field("(x0 - x1)*d/dx0 + (x0 + x1 + x0^2)*d/dx1", 2)
    assert classify_singularity_1d(X, (0, 0)).hyperbolic
    with pytest.raises(ValueError):
        classify_singularity_1d(X, (1, 1))


def test_isolated_zero():
    x = Poly.variables(3)
    assert isolated_zero(PVec([x[0], x[1], x[2]])) == (True, "exact")
    assert isolated_zero(PVec([x[0] * x[1], x[1] * x[2], x[0] * x[2]]))[0] is False
    x4 = Poly.variables(4)
    ok, how = isolated_zero(PVec([c * c for c in x4]))
    assert ok and how == "probabilistic"
    ok, _ = isolated_zero(PVec([x4[0] * x4[1], x4[1] * x4[1], x4[2] * x4[2], x4[3] * x4[3]]))
    assert ok is False
    assert macaulay_isolated([c * c for c in x4])


def test_is_prime():
    assert is_prime(2 ** 61 - 1) and not is_prime(2 ** 61 + 1) and not is_prime(1)


@pytest.mark.parametrize("d", [2, 3])
def test_conic_ngk_at_origin(d):
    om = omega_from_1d(fx.acceptance_foliation(d))
    rec, why = conic_diagnose(om, (0, 0, 0), d)
    assert why == "ok" and rec.mode == "exact" and rec.normal_type == om
    assert normal_type_at(om, (0, 0, 0), d) == om
    assert is_conic_ngk_at(om, (0, 0, 0), d + 1) is None
    info = rotational_linear_part(om, (0, 0, 0))
    assert info.is_zero and info.is_nilpotent


def test_conic_translate_equivariance():
    om = omega_from_1d(fx.acceptance_foliation(2))
    p = (1, Fraction(-1, 2), 3)
    rec = is_conic_ngk_at(om.translate(p), p, 2)
    assert rec is not None and rec.normal_type == om


def test_non_conic_reasons():
    om = omega_from_1d(fx.acceptance_foliation(2))
    assert conic_diagnose(om, (1, 1, 1), 2)[1].endswith("jet does not vanish")
    # leading part with a non-isolated rotational zero: Omega of the radial-like field x2^2 * (x0, x1, 0)
    X = PVec([parse_poly(t, 3) for t in ("x0*x2", "x1*x2", "x0^2")])
    bad = omega_from_1d(Foliation1D(X))
    rec, why = conic_diagnose(bad, (0, 0, 0), 2)
    assert rec is None and "non-isolated" in why


def test_conic_plane_restriction():
    # eta(x0..x3) = Omega(x0, x1, x2) pulled back along the projection: any 3-plane through 0
    # transverse to x3 restricts to a conic point
    om = omega_from_1d(fx.acceptance_foliation(2))
    x = Poly.variables(4)
    from foliage.exterior import pullback

    eta = pullback(x[:3], om)
    dirs = [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 2]]
    rec = conic_plane_restriction(eta, (0, 0, 0, 0), dirs, (0, 0, 0, 0), 2)
    assert rec is not None and rec.mode == "exact"
    with pytest.raises(ValueError):
        conic_plane_restriction(eta, (0, 0, 0, 0), dirs[:2], (0, 0, 0, 0), 2)


@pytest.mark.parametrize("nu,d", fx.PAIRS)
def test_kupka_fibers_and_transversal_type(nu, d):
    f = fx.binomial_map(nu)
    F = pullback_foliation(f, fx.acceptance_foliation(d), integrability=None)
    rep = kupka_on_fiber_check(F, f, fx.kupka_fiber_points(), fx.SING_POINT)
    assert rep.ok and not rep.warnings
    with pytest.raises(ValueError):
        kupka_on_fiber_check(F, f, [(1, 1, 1, 1)])
    for p in fx.kupka_fiber_points():
        cl = transversal_type_at(F.eta, p).classification
        assert cl.nondegenerate and cl.kupka_type and cl.hyperbolic and cl.mode == "exact"


def test_transversal_type_of_omega_is_the_field():
    om = omega_from_1d(fx.acceptance_foliation(2))
    tt = transversal_type_at(om, fx.SING_POINT)
    # the chart field is the designed one up to a nonzero scalar: [[1, -1], [1, 1]]
    cl = tt.classification
    M = cl.info.matrix
    c = M[0][0]
    assert c != 0 and M == [[c, -c], [c, c]]
    assert cl.hyperbolic and cl.kupka_type


def test_kupka_basic():
    om = omega_from_1d(fx.acceptance_foliation(2))
    assert kupka_at(om, fx.SING_POINT)
    assert not kupka_at(om, (1, 2, 3))
    assert not kupka_at(om, (0, 0, 0))  # d(om) vanishes at the cone point too


@pytest.mark.parametrize("d", [2, 3])
def test_tangent_symmetry_exact_and_probabilistic(d):
    om = omega_from_1d(fx.acceptance_foliation(d))
    x = Poly.variables(4)
    from foliage.exterior import pullback

    eta = pullback(x[:3], om)  # cylinder over Omega: d/dx3 is a symmetry
    Y = PVec([Poly.zero(4)] * 3 + [Poly.one(4)])
    for mode in (EXACT, PROB):
        s = verify_tangent_symmetry(eta, Y, mode)
        assert s.contracts_form and s.contracts_derivative and not s.lie_identity
    R = radial_field(3).scale(Fraction(1, d + 2))
    for mode in (EXACT, PROB):
        s = verify_tangent_symmetry(om, R, mode)
        assert s.lie_identity and s.contracts_form and not s.contracts_derivative


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3), st.data())
def test_lie_identity_probabilistic_agrees_with_exact(q, data):
    a = data.draw(forms(3, q))
    Y = data.draw(fields(3))
    assert lie_identity_check(a, Y, EXACT) == lie_identity_check(a, Y, PROB)
    ex = verify_tangent_symmetry(a, Y, EXACT)
    pr = verify_tangent_symmetry(a, Y, PROB)
    assert (ex.contracts_form, ex.contracts_derivative) == (pr.contracts_form, pr.contracts_derivative)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.data())
def test_lie_identity_holds_for_scaled_radial(q, data):
    k = data.draw(st.integers(1, 3))
    a = PForm(3, q, {key: data.draw(homogeneous_polys(3, k, 3)) for key in combinations(range(3), q)})
    if a.is_zero():
        return
    R = radial_field(3).scale(Fraction(1, k + q))
    assert lie_identity_check(a, R, EXACT) and lie_identity_check(a, R, PROB)


def test_quasi_homogeneity():
    X = fx.acceptance_foliation(3).X
    qh = quasi_homogeneity_check(radial_field(3), X)
    assert qh.lam == 2 and qh.one_minus_trace == -2
    Y = PVec([parse_poly(t, 3) for t in ("x0", "x1^2", "x2")])
    assert quasi_homogeneity_check(radial_field(3), Y) is None


def test_analyze_point_reports():
    om = omega_from_1d(fx.acceptance_foliation(2))
    rep = analyze_point(om, (0, 0, 0), 2)
    assert rep.is_singular and not rep.is_kupka and rep.conic_ngk is not None and rep.is_nilpotent_rot
    reg = analyze_point(om, (1, 2, 3), 2)
    assert not reg.is_singular and not reg.is_kupka and reg.conic_ngk is None
    F = pullback_foliation(fx.binomial_map(2), fx.acceptance_foliation(2), integrability=None)
    assert analyze_point(F.eta, (1, 1, 1, 2)).is_kupka
    with pytest.raises(ValueError):
        analyze_point(om, (1, 2))


def test_point_report_invariants():
    with pytest.raises(ValueError):
        PointReport((1, 2, 3), False, True)
