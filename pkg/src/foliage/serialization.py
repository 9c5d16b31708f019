"""JSON encodings of polynomials, forms, fields, maps, foliations and reports.

Every top-level document carries ``"format": 1``.  Rationals are written as
text (``"3/2"``) so nothing passes through floating point.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from .exterior import PForm, PVec
from .foliation import Foliation1D, FoliationQ
from .ratmap import RationalMap
from .ratpoly import Poly
from .text import format_poly, format_rational, parse_poly, parse_rational

FORMAT = 1

__all__ = [
    "FORMAT",
    "document",
    "rational_to_json",
    "rational_from_json",
    "point_to_json",
    "point_from_json",
    "matrix_to_json",
    "form_to_json",
    "form_from_json",
    "field_to_json",
    "field_from_json",
    "map_to_json",
    "map_from_json",
    "foliation_to_json",
    "foliation_from_json",
    "point_report_to_json",
    "dumps",
    "load_file",
]


def document(**body) -> Dict[str, Any]:
    out = {"format": FORMAT}
    out.update(body)
    return out


def check_format(obj: dict):
    if isinstance(obj, dict) and "format" in obj and obj["format"] != FORMAT:
        raise ValueError(f"unsupported format version {obj['format']!r}")


def rational_to_json(x) -> str:
    return format_rational(Fraction(x))


def rational_from_json(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise ValueError(f"expected an integer or a rational string, got {x!r}")


def point_to_json(p: Sequence) -> List[str]:
    return [rational_to_json(x) for x in p]


def point_from_json(obj) -> tuple:
    if isinstance(obj, str):
        obj = [s for s in obj.replace(":", ",").split(",") if s.strip()]
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"malformed point {obj!r}")
    return tuple(rational_from_json(x.strip() if isinstance(x, str) else x) for x in obj)


def matrix_to_json(M) -> List[List[str]]:
    return [[rational_to_json(x) for x in row] for row in M]


def _poly(text, nvars: int) -> Poly:
    if not isinstance(text, str):
        raise ValueError(f"expected polynomial text, got {text!r}")
    return parse_poly(text, nvars)


def form_to_json(a: PForm) -> dict:
    comps = [{"idx": list(k), "poly": format_poly(p)} for k, p in sorted(a.items())]
    return {"nvars": a.nvars, "formdeg": a.formdeg, "comps": comps}


def form_from_json(obj: dict) -> PForm:
    check_format(obj)
    try:
        n, q = int(obj["nvars"]), int(obj["formdeg"])
        comps = {}
        for c in obj["comps"]:
            key = tuple(int(i) for i in c["idx"])
            p = _poly(c["poly"], n)
            srt = tuple(sorted(key))
            if len(set(key)) != len(key):
                continue
            sign = _perm_sign(key)
            p = p if sign > 0 else -p
            comps[srt] = comps[srt] + p if srt in comps else p
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed form JSON: {e}") from None
    return PForm(n, q, comps)


def _perm_sign(key) -> int:
    inv = sum(1 for i in range(len(key)) for j in range(i + 1, len(key)) if key[i] > key[j])
    return -1 if inv % 2 else 1


def field_to_json(v: PVec) -> dict:
    return {"nvars": v.nvars, "comps": [format_poly(c) for c in v.comps]}


def field_from_json(obj) -> PVec:
    if isinstance(obj, list):
        return PVec([_poly(t, len(obj)) for t in obj])
    check_format(obj)
    n = int(obj["nvars"])
    return PVec([_poly(t, n) for t in obj["comps"]])


def map_to_json(f: RationalMap) -> dict:
    return {"n": f.n, "m": f.m, "nu": f.nu, "F": [format_poly(c) for c in f.comps]}


def map_from_json(obj: dict) -> RationalMap:
    check_format(obj)
    try:
        n, m = int(obj["n"]), int(obj["m"])
        F = [_poly(t, n + 1) for t in obj["F"]]
        nu = obj.get("nu")
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed map JSON: {e}") from None
    return RationalMap(F, n=n, m=m, nu=None if nu is None else int(nu))


def foliation_to_json(F) -> dict:
    if isinstance(F, Foliation1D):
        return {"kind": "1d", "m": F.m, "d": F.d, "X": [format_poly(c) for c in F.X.comps]}
    if isinstance(F, FoliationQ):
        return {"kind": "q", "n": F.n, "q": F.q, "eta": form_to_json(F.eta)}
    raise TypeError(f"not a foliation: {type(F).__name__}")


def foliation_from_json(obj: dict, integrability=None):
    """Decode a ``1d`` or ``q`` foliation; integrability is not re-checked unless asked."""
    check_format(obj)
    kind = obj.get("kind")
    try:
        if kind == "1d":
            m = int(obj["m"])
            X = PVec([_poly(t, m + 1) for t in obj["X"]])
            return Foliation1D(X, m=m, d=obj.get("d"))
        if kind == "q":
            eta = form_from_json(obj["eta"])
            return FoliationQ(eta, n=obj.get("n"), q=obj.get("q"), integrability=integrability)
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed foliation JSON: {e}") from None
    raise ValueError(f"unknown foliation kind {kind!r}")


def point_report_to_json(rep) -> dict:
    conic = None
    if rep.conic_ngk is not None:
        conic = {
            "d": rep.conic_ngk.d,
            "mode": rep.conic_ngk.mode,
            "normal_type": form_to_json(rep.conic_ngk.normal_type),
        }
    return {
        "point": point_to_json(rep.point),
        "singular": rep.is_singular,
        "kupka": rep.is_kupka,
        "rot_linear_part": None if rep.rot_linear_part is None else matrix_to_json(rep.rot_linear_part),
        "nilpotent": rep.is_nilpotent_rot,
        "conic_ngk": conic,
        "notes": list(rep.notes),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_file(path: str):
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    check_format(obj)
    return obj
