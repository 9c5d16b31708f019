"""Scenarios: named inputs plus a list of property checks to run on them.

A scenario is a JSON document::

    {"format": 1, "name": "...",
     "maps": {"f": <map JSON>},
     "foliations": {"G": <1d JSON>, "eta": {"kind": "pullback", "map": "f", "foliation": "G"}},
     "points": {"I": [[1, 1, 1, 1], ...]},
     "planes": {"P": {"dirs": [[1, 0, 0], ...]}},
     "assertions": [{"property": "P1", "map": "f", "form": "eta", "witnesses": "I"}, ...]}

Property names: P1 P2 P3 (conic points on I(f), Kupka fibers, hyperbolic
transversal type), Pt1 Pt2 Pt3 Pt4 (plane-restricted conic points, a
global genericity class that cannot be certified here, Kupka fibers,
transversal type) and the structural checks degree, radial, euler,
integrable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .exterior import PForm, pullback
from .foliation import (
    EXACT,
    Foliation1D,
    FoliationQ,
    Mode,
    euler_relation_check,
    forms_proportional,
    is_integrable,
    omega_from_1d,
    pullback_foliation,
    radial_check,
)
from .linalg import det, inverse
from .ratmap import RationalMap, fiber_membership, is_indeterminacy_point
from .ratpoly import Poly
from .report import FAIL, INCONCLUSIVE, PASS, Assertion
from .serialization import (
    check_format,
    foliation_from_json,
    map_from_json,
    point_from_json,
    point_to_json,
)
from .singular import (
    _linear_images,
    conic_diagnose,
    conic_plane_restriction,
    dehomogenize,
    kupka_at,
    transversal_type_at,
)

PROPERTIES = ("P1", "P2", "P3", "Pt1", "Pt2", "Pt3", "Pt4", "degree", "radial", "euler", "integrable")


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    maps: Dict[str, RationalMap] = field(default_factory=dict)
    foliations: Dict[str, Any] = field(default_factory=dict)
    points: Dict[str, List[tuple]] = field(default_factory=dict)
    planes: Dict[str, dict] = field(default_factory=dict)
    assertions: List[dict] = field(default_factory=list)

    def map(self, ref) -> RationalMap:
        if ref not in self.maps:
            raise ScenarioError(f"unknown map {ref!r}")
        return self.maps[ref]

    def foliation(self, ref):
        if ref not in self.foliations:
            raise ScenarioError(f"unknown foliation {ref!r}")
        return self.foliations[ref]

    def form(self, ref) -> PForm:
        F = self.foliation(ref)
        if isinstance(F, Foliation1D):
            return omega_from_1d(F)
        return F.eta

    def point_list(self, ref) -> Optional[List[tuple]]:
        if ref is None:
            return None
        if isinstance(ref, list):
            return [point_from_json(p) for p in ref]
        if ref not in self.points:
            raise ScenarioError(f"unknown point list {ref!r}")
        return self.points[ref]

    def plane(self, ref) -> Optional[dict]:
        if ref is None:
            return None
        if isinstance(ref, dict):
            return ref
        if ref not in self.planes:
            raise ScenarioError(f"unknown plane {ref!r}")
        return self.planes[ref]


def parse_scenario(obj: dict) -> Scenario:
    if not isinstance(obj, dict):
        raise ScenarioError("a scenario must be a JSON object")
    check_format(obj)
    sc = Scenario(str(obj.get("name", "scenario")))
    for name, m in obj.get("maps", {}).items():
        sc.maps[name] = map_from_json(m)
    pending = dict(obj.get("foliations", {}))
    for name, spec in pending.items():
        if spec.get("kind") != "pullback":
            sc.foliations[name] = foliation_from_json(spec)
    for name, spec in pending.items():
        if spec.get("kind") == "pullback":
            f = sc.map(spec.get("map"))
            G = sc.foliation(spec.get("foliation"))
            if not isinstance(G, Foliation1D):
                raise ScenarioError(f"pull-back {name!r} needs a 1d foliation")
            sc.foliations[name] = pullback_foliation(f, G)
    for name, pts in obj.get("points", {}).items():
        sc.points[name] = [point_from_json(p) for p in pts]
    for name, pl in obj.get("planes", {}).items():
        sc.planes[name] = pl
    for i, a in enumerate(obj.get("assertions", [])):
        prop = a.get("property")
        if prop not in PROPERTIES:
            raise ScenarioError(f"assertion {i}: unknown property {prop!r}")
        for key in ("map",):
            if key in a:
                sc.map(a[key])
        for key in ("form", "foliation"):
            if key in a:
                sc.foliation(a[key])
        for key in ("witnesses", "fiber"):
            if isinstance(a.get(key), str):
                sc.point_list(a[key])
        if isinstance(a.get("plane"), str):
            sc.plane(a["plane"])
        sc.assertions.append(a)
    return sc


# ---------------------------------------------------------------------------
# Property checks
# ---------------------------------------------------------------------------

def _label(p) -> str:
    return "[" + ":".join(point_to_json(p)) + "]"


def _chart(p) -> int:
    return next(k for k, x in enumerate(p) if x)


def _chart_map(f: RationalMap, c: int) -> List[Poly]:
    n = f.n + 1
    y = Poly.variables(n - 1)
    images = [y[i] if i < c else (Poly.one(n - 1) if i == c else y[i - 1]) for i in range(n)]
    return [F.substitute(images) for F in f.comps]


def _transport(f: RationalMap, c: int, pc, h: PForm) -> Optional[PForm]:
    """Pull ``h`` back by the inverse of the linear part of ``f`` at ``pc`` (square case only)."""
    Fc = _chart_map(f, c)
    if len(Fc) != len(pc):
        return None
    L = [[Fraction(F.partial(j).evaluate(pc)) for j in range(len(pc))] for F in Fc]
    if det(L) == 0:
        return None
    Linv = inverse(L)
    return pullback(_linear_images(Linv, len(pc)), h)


def check_conic_witnesses(f: RationalMap, eta: PForm, witnesses, d: int,
                          mode: Optional[Mode] = None, plane: Optional[dict] = None) -> Assertion:
    if witnesses is None or not witnesses:
        return Assertion("", INCONCLUSIVE, "exact", {"reason": "no indeterminacy witnesses supplied"})
    modes = set()
    transported = []
    for p in witnesses:
        if not is_indeterminacy_point(f, p):
            return Assertion("", FAIL, "exact", {"reason": "witness is not an indeterminacy point"},
                             _label(p))
        c = _chart(p)
        ec = dehomogenize(eta, c)
        pc = tuple(x / p[c] for i, x in enumerate(p) if i != c)
        if plane is None:
            rec, why = conic_diagnose(ec, pc, d, mode)
        else:
            dirs = plane.get("dirs")
            if dirs is None:
                k = ec.formdeg + 2
                dirs = [[int(i == j) for i in range(ec.nvars)] for j in range(k)]
            rec = conic_plane_restriction(ec, pc, dirs, pc, d, mode)
            why = "restricted form is not conic NGK" if rec is None else "ok"
        if rec is None:
            return Assertion("", FAIL, "exact", {"reason": why, "witness": _label(p)}, _label(p))
        modes.add(rec.mode)
        if plane is None:
            transported.append((p, _transport(f, c, pc, rec.normal_type)))
    mode_label = "probabilistic" if "probabilistic" in modes else "exact"
    detail = {"witnesses": len(witnesses), "d": d}
    if transported and all(t is not None for _, t in transported):
        ref = transported[0][1]
        for p, t in transported[1:]:
            if forms_proportional(t, ref) is None:
                return Assertion("", FAIL, mode_label,
                                 {"reason": "normal types differ after transport", "witness": _label(p)},
                                 _label(p))
        detail["normal_types_agree"] = True
    elif transported:
        detail["normal_types_agree"] = None
    return Assertion("", PASS, mode_label, detail)


def check_kupka_fibers(f: RationalMap, eta: PForm, fiber, over=None) -> Assertion:
    if not fiber:
        return Assertion("", INCONCLUSIVE, "exact", {"reason": "no fiber witnesses supplied"})
    bad = []
    for p in fiber:
        if is_indeterminacy_point(f, p):
            return Assertion("", FAIL, "exact", {"reason": "fiber point lies in the indeterminacy locus"},
                             _label(p))
        if over is not None and not fiber_membership(f, p, over):
            return Assertion("", FAIL, "exact", {"reason": "point is not in the fiber"}, _label(p))
        if not kupka_at(eta, p):
            bad.append(p)
    if bad:
        return Assertion("", FAIL, "exact", {"reason": "not a Kupka point"}, _label(bad[0]))
    return Assertion("", PASS, "exact", {"points": len(fiber)})


def check_transversal(eta: PForm, point) -> Assertion:
    if point is None:
        return Assertion("", INCONCLUSIVE, "exact", {"reason": "no point supplied"})
    try:
        tt = transversal_type_at(eta, point)
    except ValueError as e:
        return Assertion("", FAIL, "exact", {"reason": str(e)}, _label(point))
    cl = tt.classification
    detail = {
        "trace": str(cl.info.trace),
        "determinant": str(cl.info.determinant),
        "kupka_type": cl.kupka_type,
        "nondegenerate": cl.nondegenerate,
        "hyperbolic": cl.hyperbolic_label,
    }
    if cl.mode == "numerical" and "numerical" in cl.info.eigen:
        detail["eigenvalues_numerical"] = [f"{v.real:.12g}{v.imag:+.12g}i" for v in cl.info.eigen["numerical"]]
    if cl.hyperbolic is None:
        return Assertion("", INCONCLUSIVE, cl.mode, detail)
    if cl.hyperbolic:
        return Assertion("", PASS, cl.mode, detail)
    return Assertion("", FAIL, cl.mode, detail, _label(point))


def run_assertion(sc: Scenario, spec: dict, mode: Mode = EXACT) -> Assertion:
    prop = spec["property"]
    if prop == "Pt2":
        return Assertion("", INCONCLUSIVE, "exact",
                         {"reason": "not certifiable: membership in the generic class is a global condition"})
    form_ref = spec.get("form")
    if form_ref is None:
        raise ScenarioError(f"{prop} needs a 'form'")
    F = sc.foliation(form_ref)
    eta = sc.form(form_ref)
    if prop in ("degree", "radial", "euler", "integrable"):
        if prop == "degree":
            theta = F.theta if isinstance(F, FoliationQ) else F.d
            ok = theta == int(spec["expected"])
            return Assertion("", PASS if ok else FAIL, "exact", {"degree": theta, "expected": spec["expected"]})
        fn = {"radial": radial_check, "euler": euler_relation_check, "integrable": is_integrable}[prop]
        return Assertion("", PASS if fn(eta, mode) else FAIL, mode.kind, {})
    if prop in ("P3", "Pt4"):
        pt = spec.get("point")
        return check_transversal(eta, None if pt is None else point_from_json(pt))
    f = sc.map(spec.get("map"))
    if prop in ("P2", "Pt3"):
        over = spec.get("over")
        return check_kupka_fibers(f, eta, sc.point_list(spec.get("fiber")),
                                  None if over is None else point_from_json(over))
    d = spec.get("d")
    if d is None:
        d = F.meta.get("d") if isinstance(F, FoliationQ) else None
    if d is None:
        raise ScenarioError(f"{prop} needs a conic degree 'd'")
    witnesses = sc.point_list(spec.get("witnesses"))
    if prop == "P1":
        return check_conic_witnesses(f, eta, witnesses, int(d), mode)
    plane = sc.plane(spec.get("plane")) or {}
    return check_conic_witnesses(f, eta, witnesses, int(d), mode, plane=plane)


def run_scenario(sc: Scenario, mode: Mode = EXACT) -> List[Assertion]:
    out = []
    for i, spec in enumerate(sc.assertions):
        a = run_assertion(sc, spec, mode)
        a.name = spec.get("name") or f"{i:02d}-{spec['property']}"
        out.append(a)
    return out
