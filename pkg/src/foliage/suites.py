"""Built-in verification batteries run by ``foliage verify``."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List

from . import fixtures as fx
from .exterior import PForm, interior_product, radial_field
from .foliation import (
    EXACT,
    Mode,
    bracket_euler_check,
    degree_of,
    euler_relation_check,
    is_decomposable_everywhere,
    is_integrable,
    omega_displayed_sum,
    omega_from_1d,
    pullback_displayed_sum,
    pullback_foliation,
    radial_check,
)
from .hypotheses import check_kupka_fibers, check_transversal
from .ratmap import binomial_witnesses, indeterminacy_witness_check, is_indeterminacy_point
from .report import FAIL, PASS, Assertion, check, passed
from .serialization import point_to_json
from .singular import (
    conic_diagnose,
    rotational_linear_part,
    sing_count_p2,
    verify_tangent_symmetry,
)

SUITES = ("identities", "degrees", "kupka", "counts", "all")


@lru_cache(maxsize=None)
def omega(d: int) -> PForm:
    return omega_from_1d(fx.acceptance_foliation(d))


@lru_cache(maxsize=None)
def pulled_back(nu: int, d: int):
    return pullback_foliation(fx.binomial_map(nu), fx.acceptance_foliation(d), integrability=None)


def acceptance_forms() -> Dict[str, PForm]:
    forms = {f"omega-d{d}": omega(d) for d in (2, 3)}
    for nu, d in fx.PAIRS:
        forms[f"pullback-nu{nu}-d{d}"] = pulled_back(nu, d).eta
    return forms


def identity_checks(name: str, a: PForm, mode: Mode) -> List[Assertion]:
    """Radial, Euler, Frobenius and Lie-derivative identities for one homogeneous form."""
    k = a.coefficient_degree()
    rho = Fraction(1, k + a.formdeg)
    out = [
        check(f"identities/{name}/radial", lambda: passed(radial_check(a, mode), mode.kind)),
        check(f"identities/{name}/euler", lambda: passed(euler_relation_check(a, mode), mode.kind,
                                                         factor=k + a.formdeg)),
        check(f"identities/{name}/integrable", lambda: passed(is_integrable(a, mode), mode.kind)),
        check(f"identities/{name}/lie-scaled-radial",
              lambda: passed(verify_tangent_symmetry(a, radial_field(a.nvars).scale(rho), mode).lie_identity,
                             mode.kind, rho=str(rho))),
    ]
    return out


def suite_identities(mode: Mode) -> List[Assertion]:
    out = []
    for name, a in acceptance_forms().items():
        out.extend(identity_checks(name, a, mode))
    for d in (2, 3):
        G = fx.acceptance_foliation(d)

        def tangent(G=G, d=d):
            ok = interior_product(G.X, omega(d)).is_zero()
            return passed(ok)

        out.append(check(f"identities/omega-d{d}/contract-X", tangent))
        out.append(check(f"identities/omega-d{d}/bracket-R-X", lambda G=G: passed(bracket_euler_check(G))))
        out.append(check(f"identities/omega-d{d}/displayed-sum",
                         lambda G=G, d=d: passed(omega_displayed_sum(G) == omega(d))))

    def nonexample():
        a = PForm(4, 2, {(0, 1): 1, (2, 3): 1})
        dec = is_decomposable_everywhere(a, mode)
        return Assertion("", PASS if not dec else FAIL, mode.kind, {"expected": "not decomposable",
                                                                    "decomposable": dec})

    out.append(check("identities/plucker-nonexample", nonexample))
    return out


def suite_degrees(mode: Mode = EXACT) -> List[Assertion]:
    out = []
    for nu, d in fx.PAIRS:
        def deg(nu=nu, d=d):
            F = pulled_back(nu, d)
            pred = F.meta["predicted_degree"]
            ok = F.theta == pred == (d + 2) * nu - 2 and F.removed_degree == 0
            return passed(ok, degree=F.theta, predicted=pred, removed_degree=F.removed_degree)

        out.append(check(f"degrees/pullback-nu{nu}-d{d}", deg))
    for d in (2, 3):
        out.append(check(f"degrees/omega-d{d}", lambda d=d: passed(degree_of(omega(d)) == d, degree=d)))

        def ident(d=d):
            F = pullback_foliation(fx.identity_map(3), fx.acceptance_foliation(d), integrability=None)
            return passed(F.theta == d and F.eta == omega(d), degree=F.theta)

        out.append(check(f"degrees/identity-map-d{d}", ident))

    def displayed():
        f, G = fx.binomial_map(2), fx.acceptance_foliation(2)
        return passed(pullback_displayed_sum(f, G) == pulled_back(2, 2).eta)

    out.append(check("degrees/displayed-sum-nu2-d2", displayed))
    return out


def suite_kupka(mode: Mode = EXACT) -> List[Assertion]:
    out = []
    for nu, d in fx.PAIRS:
        f = fx.binomial_map(nu)
        eta = pulled_back(nu, d).eta
        pts = fx.kupka_fiber_points()
        out.append(check(f"kupka/fibers-nu{nu}-d{d}",
                         lambda f=f, eta=eta, pts=pts: check_kupka_fibers(f, eta, pts, fx.SING_POINT)))
        out.append(check(f"kupka/transversal-nu{nu}-d{d}",
                         lambda eta=eta, p=pts[0]: check_transversal(eta, p)))

    def reject():
        f = fx.binomial_map(2)
        p = (1, 1, 1, 1)
        return passed(is_indeterminacy_point(f, p), rejected=point_to_json(p))

    out.append(check("kupka/t1-rejected", reject))
    for d in (2, 3):
        a = omega(d)

        def conic(a=a, d=d):
            rec, why = conic_diagnose(a, (0, 0, 0), d, mode)
            ok = rec is not None and rec.normal_type == a
            return Assertion("", PASS if ok else FAIL, rec.mode if rec else "exact", {"reason": why})

        def translated(a=a, d=d):
            p = (1, 1, 1)
            b = a.translate(p)
            rec, why = conic_diagnose(b, p, d, mode)
            ok = rec is not None and rec.normal_type == a and rec.normal_type.translate(p) == b
            return Assertion("", PASS if ok else FAIL, rec.mode if rec else "exact", {"reason": why})

        def nilpotent(a=a):
            info = rotational_linear_part(a, (0, 0, 0))
            return passed(info.is_zero and info.is_nilpotent)

        out.append(check(f"kupka/conic-omega-d{d}", conic))
        out.append(check(f"kupka/conic-translate-omega-d{d}", translated))
        out.append(check(f"kupka/rot-nilpotent-omega-d{d}", nilpotent))
    return out


def suite_counts(mode: Mode = EXACT) -> List[Assertion]:
    out = []
    for d in (2, 3):
        def count(d=d):
            c = sing_count_p2(fx.acceptance_foliation(d))
            return passed(c == d * d + d + 1, count=c, expected=d * d + d + 1)

        out.append(check(f"counts/p2-d{d}", count))

    def diag():
        c = sing_count_p2(fx.diagonal_foliation())
        return passed(c == 3, count=c, expected=3)

    out.append(check("counts/p2-diagonal", diag))
    for nu in (2, 3):
        def bezout(nu=nu):
            f = fx.binomial_map(nu)
            pts, total = binomial_witnesses(f)
            rep = indeterminacy_witness_check(f, pts)
            expected_complete = len(pts) == total
            ok = rep.bezout_bound == nu ** 3 and rep.all_generic and rep.complete == expected_complete
            if nu == 3:
                ok = ok and rep.status.startswith("partial witnesses") and rep.witnessed == 1
            return passed(ok, witnessed=rep.witnessed, bound=rep.bezout_bound, status=rep.status,
                          complete=rep.complete)

        out.append(check(f"counts/bezout-nu{nu}", bezout))
    return out


_RUNNERS: Dict[str, Callable[[Mode], List[Assertion]]] = {
    "identities": suite_identities,
    "degrees": suite_degrees,
    "kupka": suite_kupka,
    "counts": suite_counts,
}


def run_suite(name: str, mode: Mode = EXACT) -> List[Assertion]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    names = list(_RUNNERS) if name == "all" else [name]
    out = []
    for n in names:
        out.extend(_RUNNERS[n](mode))
    return out
