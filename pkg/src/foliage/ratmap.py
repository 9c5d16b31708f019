"""Rational maps between projective spaces given by homogeneous polynomials."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .linalg import bareiss_rank
from .ratpoly import ANY_DEGREE, Poly, gcd_list

__all__ = [
    "RationalMap",
    "WitnessReport",
    "projectively_equal",
    "is_indeterminacy_point",
    "is_generic_at",
    "indeterminacy_witness_check",
    "binomial_witnesses",
    "is_critical_point",
    "fiber_membership",
    "pair_genericity_check",
]

Point = Tuple[Fraction, ...]


def _point(p) -> Point:
    return tuple(Fraction(x) for x in p)


def projectively_equal(p: Sequence, q: Sequence) -> bool:
    """Whether two nonzero vectors span the same line."""
    p, q = _point(p), _point(q)
    if len(p) != len(q):
        return False
    # all 2x2 minors vanish
    i = next((k for k, x in enumerate(p) if x), None)
    if i is None or not q[i]:
        return False
    return all(p[i] * y == q[i] * x for x, y in zip(p, q))


def normalize_point(p: Sequence) -> Point:
    """Scale so the first nonzero coordinate is 1."""
    p = _point(p)
    i = next((k for k, x in enumerate(p) if x), None)
    if i is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(x / p[i] for x in p)


class RationalMap:
    """``f: P^n --> P^m`` given by ``m+1`` homogeneous polynomials of degree ``nu``."""

    def __init__(self, comps: Sequence[Poly], n: Optional[int] = None, m: Optional[int] = None,
                 nu: Optional[int] = None):
        comps = tuple(comps)
        if not comps:
            raise ValueError("a rational map needs at least one component")
        nv = comps[0].nvars
        if any(c.nvars != nv for c in comps):
            raise ValueError("components live in different rings")
        if n is not None and n + 1 != nv:
            raise ValueError(f"source dimension {n} needs {n + 1} variables, got {nv}")
        if m is not None and m + 1 != len(comps):
            raise ValueError(f"target dimension {m} needs {m + 1} components, got {len(comps)}")
        self.comps = comps
        self.n = nv - 1
        self.m = len(comps) - 1
        if nu is None:
            degs = {c.homogeneous_degree() for c in comps} - {ANY_DEGREE}
            nu = degs.pop() if len(degs) == 1 and None not in degs else None
        self.nu = nu

    def __iter__(self):
        return iter(self.comps)

    def __len__(self):
        return len(self.comps)

    def __call__(self, p) -> Point:
        return tuple(Fraction(c.evaluate(p)) for c in self.comps)

    def validation_errors(self) -> List[str]:
        errs = []
        if all(c.is_zero() for c in self.comps):
            errs.append("all components are zero")
            return errs
        for i, c in enumerate(self.comps):
            d = c.homogeneous_degree()
            if d is None:
                errs.append(f"component {i} is not homogeneous")
            elif d is not ANY_DEGREE and self.nu is not None and d != self.nu:
                errs.append(f"component {i} has degree {d}, expected {self.nu}")
        if self.nu is None and not errs:
            errs.append("components do not share a common degree")
        if not errs:
            g = gcd_list(self.comps)
            if not g.is_constant():
                errs.append(f"components have the common factor {g}")
        return errs

    def validate(self) -> bool:
        return not self.validation_errors()

    def require_valid(self):
        errs = self.validation_errors()
        if errs:
            raise ValueError("invalid rational map: " + "; ".join(errs))

    def jacobian_at(self, p) -> List[List[Fraction]]:
        return [[Fraction(c.partial(j).evaluate(p)) for j in range(self.n + 1)] for c in self.comps]

    def __repr__(self):
        return f"RationalMap(n={self.n}, m={self.m}, nu={self.nu}, [{', '.join(map(str, self.comps))}])"


def _nonzero(p):
    p = _point(p)
    if not any(p):
        raise ValueError("the zero vector is not a projective point")
    return p


def is_indeterminacy_point(f: RationalMap, p) -> bool:
    p = _nonzero(p)
    return all(c.evaluate(p) == 0 for c in f.comps)


def is_generic_at(f: RationalMap, p) -> bool:
    """Whether ``dF_0 ^ ... ^ dF_m`` is nonzero at the indeterminacy point ``p``."""
    if not is_indeterminacy_point(f, p):
        raise ValueError(f"{list(map(str, p))} is not an indeterminacy point")
    return bareiss_rank(f.jacobian_at(_point(p))) == f.m + 1


@dataclass
class WitnessReport:
    witnessed: int
    bezout_bound: int
    generic: List[bool]
    complete: bool
    status: str
    points: List[Point] = field(default_factory=list)

    @property
    def all_generic(self) -> bool:
        return all(self.generic)


def indeterminacy_witness_check(f: RationalMap, pts: Sequence[Sequence]) -> WitnessReport:
    if f.n != f.m + 1:
        raise ValueError(f"witness counting needs n == m + 1 (got n={f.n}, m={f.m})")
    if f.nu is None:
        raise ValueError("map has no common degree")
    pts = [_nonzero(p) for p in pts]
    for i, p in enumerate(pts):
        if len(p) != f.n + 1:
            raise ValueError(f"point {i} has {len(p)} coordinates, expected {f.n + 1}")
        if not is_indeterminacy_point(f, p):
            raise ValueError(f"point {i} {[str(x) for x in p]} is not an indeterminacy point")
        for j in range(i):
            if projectively_equal(p, pts[j]):
                raise ValueError(f"points {j} and {i} are the same projective point")
    generic = [is_generic_at(f, p) for p in pts]
    bound = f.nu ** (f.m + 1)
    complete = len(pts) == bound and all(generic)
    if complete:
        status = "complete"
    elif pts:
        status = f"partial witnesses ({len(pts)} of {bound})"
    else:
        status = f"0 of {bound} witnessed"
    return WitnessReport(len(pts), bound, generic, complete, status, pts)


def _rational_root(c: Fraction, k: int) -> List[Fraction]:
    """Rational solutions of ``x**k == c``."""
    if c == 0:
        return [Fraction(0)]

    def iroot(n):
        if n < 0:
            return None
        r = round(n ** (1.0 / k)) if n < 2 ** 1000 else None
        if r is None or r ** k != n:
            # exact integer bisection
            lo, hi = 0, 1 << (n.bit_length() // k + 1)
            while lo < hi:
                mid = (lo + hi) // 2
                if mid ** k < n:
                    lo = mid + 1
                else:
                    hi = mid
            r = lo
        return r if r ** k == n else None

    sign = 1
    num, den = c.numerator, c.denominator
    if num < 0:
        if k % 2 == 0:
            return []
        num, sign = -num, -1
    a, b = iroot(num), iroot(den)
    if a is None or b is None:
        return []
    r = Fraction(sign * a, b)
    return [r, -r] if k % 2 == 0 else [r]


def binomial_witnesses(f: RationalMap) -> Tuple[List[Point], int]:
    """Rational indeterminacy points of maps ``F_i = a_i x_{i+1}^nu + b_i x_0^nu``.

    Returns the rational points in closed form and the total number of
    complex points.  Raises ValueError when ``f`` is not of that shape.
    """
    nu = f.nu
    if f.n != f.m + 1 or nu is None:
        raise ValueError("not a binomial map P^{m+1} --> P^m")
    n = f.n + 1
    roots = []
    for i, c in enumerate(f.comps):
        t = c.terms
        a = t.get(tuple(nu if j == i + 1 else 0 for j in range(n)))
        b = t.get(tuple(nu if j == 0 else 0 for j in range(n)), 0)
        if a is None or len(t) != (2 if b else 1):
            raise ValueError(f"component {i} is not of the form a*x{i + 1}^{nu} + b*x0^{nu}")
        roots.append(_rational_root(Fraction(-b) / Fraction(a), nu))
    pts = [(Fraction(1),) + tuple(r) for r in product(*roots)]
    total = nu ** (f.m + 1) if all(c.terms.get(tuple(nu if j == 0 else 0 for j in range(n))) for c in f.comps) else None
    return pts, total


def is_critical_point(f: RationalMap, p, chart: int) -> bool:
    """Whether the differential of ``f`` in the affine chart ``x_chart = 1`` has rank < m."""
    p = _nonzero(p)
    if not 0 <= chart <= f.n:
        raise ValueError(f"chart index {chart} out of range")
    if not p[chart]:
        raise ValueError(f"point is not in the chart x{chart} != 0")
    val = f(p)
    if not any(val):
        raise ValueError("point lies in the indeterminacy locus")
    j = next(k for k, x in enumerate(val) if x)
    J = f.jacobian_at(p)
    rows = []
    for i in range(f.m + 1):
        if i == j:
            continue
        rows.append([val[j] * J[i][c] - val[i] * J[j][c] for c in range(f.n + 1) if c != chart])
    return bareiss_rank(rows) <= f.m - 1


def fiber_membership(f: RationalMap, p, q) -> bool:
    p = _nonzero(p)
    q = _nonzero(q)
    val = f(p)
    if not any(val):
        raise ValueError("point lies in the indeterminacy locus")
    return projectively_equal(val, q)


def pair_genericity_check(f: RationalMap, sing_points: Sequence, fiber_points: Sequence) -> dict:
    """Pointwise check that supplied fiber points over singularities are non-critical."""
    results = []
    for p in fiber_points:
        p = _nonzero(p)
        over = [q for q in sing_points if fiber_membership(f, p, q)]
        chart = next(k for k, x in enumerate(p) if x)
        crit = is_critical_point(f, p, chart)
        results.append({"point": p, "over": over[0] if over else None, "critical": crit})
    ok = all(r["over"] is not None and not r["critical"] for r in results)
    return {"ok": ok, "points": results}
