"""Point-level analysis of singular forms.

Everything here works on a form and a rational point: vanishing, the Kupka
condition, the linear part of the rotational, conic NGK detection through
jets, transversal types at Kupka points and the count of singular points of
a foliation on P^2.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .exterior import (
    PForm,
    const_contract,
    PVec,
    exterior_derivative,
    homogeneous_part,
    interior_product,
    jet_at,
    lie_bracket,
    lie_derivative,
    pullback,
    rotational,
)
from .foliation import EXACT, Foliation1D, FoliationQ, Mode, radial_check
from .linalg import bareiss_rank, charpoly, deflate, det, inverse, nullspace, rank_mod, rational_roots, trace
from .ratmap import RationalMap, fiber_membership, is_indeterminacy_point
from .ratpoly import ANY_DEGREE, DEFAULT_PRIME, Poly, _mod_coeff, gcd_list, point_cache, value_and_gradient_mod, resultant

__all__ = [
    "PointReport",
    "ConicRecord",
    "LinearPartInfo",
    "singular_at",
    "kupka_at",
    "kupka_on_fiber_check",
    "rotational_linear_part",
    "linear_part_info",
    "is_conic_ngk_at",
    "conic_diagnose",
    "normal_type_at",
    "conic_plane_restriction",
    "verify_tangent_symmetry",
    "lie_identity_check",
    "quasi_homogeneity_check",
    "classify_singularity_1d",
    "transversal_type_at",
    "sing_count_p2",
    "isolated_zero",
    "analyze_point",
    "dehomogenize",
    "restrict_to_hyperplane",
]

EIGEN_TOL = 1e-9


def _pt(p) -> Tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in p)


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

@dataclass
class LinearPartInfo:
    matrix: List[List[Fraction]]
    trace: Fraction
    determinant: Fraction
    charpoly: List[Fraction]
    eigen: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.matrix)
        if self.charpoly[1] != -self.trace or self.charpoly[n] != (-1) ** n * self.determinant:
            raise AssertionError("trace/determinant disagree with the characteristic polynomial")

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    @property
    def is_nilpotent(self) -> bool:
        return all(c == 0 for c in self.charpoly[1:])


def linear_part_info(M) -> LinearPartInfo:
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    if n == 0:
        return LinearPartInfo([], Fraction(0), Fraction(1), [Fraction(1)])
    cp = charpoly(M)
    info = LinearPartInfo(M, trace(M), det(M), cp)
    info.eigen = _eigen_info(cp)
    return info


def _eigen_info(cp: Sequence[Fraction]) -> dict:
    """Exact eigen data up to one quadratic factor, numerical beyond."""
    roots = rational_roots(cp)
    rest = deflate(cp, roots)
    info = {"rational": roots, "residual": rest}
    if len(rest) == 3:
        a, b, c = rest
        info["quadratic_discriminant"] = b * b - 4 * a * c
        info["mode"] = "exact"
    elif len(rest) <= 1:
        info["mode"] = "exact"
    else:
        info["mode"] = "numerical"
    if len(rest) > 1:
        vals = np.roots([float(c) for c in rest])
        info["numerical"] = [complex(v) for v in vals]
    return info


@dataclass
class ConicRecord:
    d: int
    normal_type: PForm
    mode: str
    base: Tuple[Fraction, ...]


@dataclass
class PointReport:
    point: Tuple[Fraction, ...]
    is_singular: bool
    is_kupka: bool
    rot_linear_part: Optional[List[List[Fraction]]] = None
    is_nilpotent_rot: Optional[bool] = None
    conic_ngk: Optional[ConicRecord] = None
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.is_kupka and not self.is_singular:
            raise ValueError("a Kupka point must be singular")
        if self.conic_ngk is not None:
            if not self.is_singular:
                raise ValueError("a conic point must be singular")
            h = self.conic_ngk.normal_type
            if h.coefficient_degree() != self.conic_ngk.d + 1:
                raise ValueError("normal type has the wrong coefficient degree")
            if h.formdeg and not radial_check(h):
                raise ValueError("normal type is not annihilated by the radial field")


# ---------------------------------------------------------------------------
# Basic tests
# ---------------------------------------------------------------------------

def singular_at(a: PForm, p) -> bool:
    return a.vanishes_at(_pt(p))


def kupka_at(a: PForm, p) -> bool:
    p = _pt(p)
    return singular_at(a, p) and not exterior_derivative(a).vanishes_at(p)


@dataclass
class KupkaFiberReport:
    ok: bool
    results: List[Tuple[Tuple[Fraction, ...], bool]]
    warnings: List[str]


def kupka_on_fiber_check(F: Union[FoliationQ, PForm], f: RationalMap, points: Sequence,
                         sing_point: Optional[Sequence] = None) -> KupkaFiberReport:
    """Kupka test at points of fibers of ``f`` over a singular point of the foliation pulled back."""
    eta = F.eta if isinstance(F, FoliationQ) else F
    warnings = []
    if not points:
        warnings.append("no fiber points supplied; check is vacuous")
    results = []
    for p in points:
        p = _pt(p)
        if is_indeterminacy_point(f, p):
            raise ValueError(f"[{':'.join(map(str, p))}] lies in the indeterminacy locus")
        if sing_point is not None and not fiber_membership(f, p, sing_point):
            raise ValueError(f"[{':'.join(map(str, p))}] is not in the fiber over the given point")
        results.append((p, kupka_at(eta, p)))
    return KupkaFiberReport(all(ok for _, ok in results), results, warnings)


def rotational_linear_part(a: PForm, p) -> LinearPartInfo:
    """Jacobian at ``p`` of the rotational of ``a`` (computed from the 2-jet)."""
    if a.formdeg != a.nvars - 2:
        raise ValueError(f"rotational needs an (N-2)-form; got formdeg {a.formdeg} on N={a.nvars}")
    j = jet_at(a, _pt(p), 2)
    Z = rotational(j.body)
    return linear_part_info(Z.jacobian_at([0] * a.nvars))


# ---------------------------------------------------------------------------
# Isolated zeros of homogeneous fields
# ---------------------------------------------------------------------------

def _monomials(n: int, deg: int) -> List[Tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def macaulay_matrix(polys: Sequence[Poly], D: int) -> List[List]:
    """Rows ``x^alpha * f_i`` in degree D, columns the monomials of degree D."""
    n = polys[0].nvars
    cols = {e: i for i, e in enumerate(_monomials(n, D))}
    rows = []
    for f in polys:
        d = f.total_degree()
        if f.is_zero() or D < d:
            continue
        for alpha in _monomials(n, D - d):
            row = [0] * len(cols)
            for e, c in f.items():
                row[cols[tuple(x + y for x, y in zip(e, alpha))]] = c
            rows.append(row)
    return rows


def macaulay_isolated(Z: Sequence[Poly], prime: Optional[int] = None) -> bool:
    """Whether N homogeneous polys of common degree d in N variables only vanish at 0.

    True iff the Macaulay matrix in degree ``N(d-1)+1`` has full column rank.
    With ``prime`` the rank is taken modulo that prime; full rank there
    implies full rank over Q.
    """
    n = Z[0].nvars
    degs = {z.homogeneous_degree() for z in Z} - {ANY_DEGREE}
    if len(degs) != 1 or None in degs:
        raise ValueError("components must be homogeneous of one common degree")
    d = degs.pop()
    D = n * (d - 1) + 1
    M = macaulay_matrix(Z, D)
    ncols = len(_monomials(n, D))
    if len(M) < ncols:
        return False
    if prime is None:
        return bareiss_rank(M) == ncols
    M = [[_mod_coeff(c, prime) if c else 0 for c in row] for row in M]
    return rank_mod(M, prime) == ncols


def _random_gl(n: int, rng: random.Random, bound: int = 3) -> List[List[int]]:
    while True:
        T = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if det(T):
            return T


def _linear_images(T: Sequence[Sequence], nvars: int) -> List[Poly]:
    xs = Poly.variables(nvars)
    out = []
    for row in T:
        p = Poly.zero(nvars)
        for c, x in zip(row, xs):
            if c:
                p = p + x.scale(c)
        out.append(p)
    return out


def _isolated_exact_3(Z: Sequence[Poly], rng: random.Random) -> bool:
    """Exact isolation test for three ternary forms via resultants."""
    n = 3
    d = next(z.total_degree() for z in Z if not z.is_zero())
    for _ in range(20):
        T = _random_gl(n, rng)
        Zs = [z.substitute(_linear_images(T, n)) for z in Z]
        e1 = (0, d, 0)
        if Zs[0].coeff(e1) == 0:
            continue
        y = Poly.variables(n)
        # line y2 = 0
        at_inf = [z.substitute([y[0], y[1], Poly.zero(n)]) for z in Zs]
        if not gcd_list(at_inf).is_constant():
            return False
        aff = [z.substitute([y[0], y[1], Poly.one(n)]) for z in Zs]
        s1, s2 = rng.randint(1, 97), rng.randint(98, 197)
        r1 = resultant(aff[0], aff[1] + aff[2].scale(s1), 1)
        r2 = resultant(aff[0], aff[1] + aff[2].scale(s2), 1)
        if r1.is_zero() or r2.is_zero():
            break
        if gcd_list([r1, r2]).is_constant():
            return True
        break
    # ambiguous elimination: settle with the exact Macaulay rank
    return macaulay_isolated(Z)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin for m < 3.3e24."""
    if m < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for sp in bases:
        if m % sp == 0:
            return m == sp
    dd, s = m - 1, 0
    while dd % 2 == 0:
        dd //= 2
        s += 1
    for a in bases:
        x = pow(a, dd, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _next_prime_below(n: int) -> int:
    m = n - 1
    while not is_prime(m):
        m -= 1
    return m


def isolated_zero(Z: PVec, mode: Optional[Mode] = None, seed: int = 0) -> Tuple[bool, str]:
    """Whether the homogeneous field ``Z`` vanishes only at the origin.

    Exact for N <= 3.  For N >= 4 the Macaulay rank is taken modulo primes
    (``mode.trials`` of them, starting at ``mode.prime``); a full rank is
    conclusive, a deficient rank at every prime is reported as not isolated.
    """
    n = Z.nvars
    comps = list(Z.comps)
    if all(c.is_zero() for c in comps):
        return False, "exact"
    if n == 1:
        return True, "exact"
    if n == 2:
        return gcd_list(comps).is_constant(), "exact"
    if n == 3:
        return _isolated_exact_3(comps, random.Random(seed)), "exact"
    mode = mode or Mode("probabilistic", DEFAULT_PRIME, 8, seed)
    prime = mode.prime
    for _ in range(mode.trials):
        if macaulay_isolated(comps, prime):
            return True, "probabilistic"
        prime = _next_prime_below(prime)
    return False, "probabilistic"


# ---------------------------------------------------------------------------
# Conic NGK singularities
# ---------------------------------------------------------------------------

def conic_diagnose(a: PForm, p, d: int, mode: Optional[Mode] = None,
                   seed: int = 0) -> Tuple[Optional[ConicRecord], str]:
    """Run the conic NGK checks in order; return the record or the failing reason."""
    if d < 2:
        raise ValueError("conic degree must be at least 2")
    if a.formdeg != a.nvars - 2:
        raise ValueError(f"need an (N-2)-form; got formdeg {a.formdeg} on N={a.nvars}")
    p = _pt(p)
    if not jet_at(a, p, d).is_zero():
        return None, f"{d}-jet does not vanish"
    h = homogeneous_part(jet_at(a, p, d + 1), d + 1)
    if h.is_zero():
        return None, f"degree {d + 1} part vanishes"
    if h.formdeg and not radial_check(h):
        return None, "leading part is not annihilated by the radial field"
    ok, how = isolated_zero(rotational(h), mode, seed)
    if not ok:
        return None, f"rotational of the leading part has a non-isolated zero ({how})"
    return ConicRecord(d, h, how, p), "ok"


def is_conic_ngk_at(a: PForm, p, d: int, mode: Optional[Mode] = None,
                    seed: int = 0) -> Optional[ConicRecord]:
    return conic_diagnose(a, p, d, mode, seed)[0]


def normal_type_at(a: PForm, p, d: int, mode: Optional[Mode] = None) -> PForm:
    rec, why = conic_diagnose(a, p, d, mode)
    if rec is None:
        raise ValueError(f"not a conic NGK singularity: {why}")
    return rec.normal_type


def _affine_images(base: Sequence, dirs: Sequence[Sequence]) -> List[Poly]:
    k = len(dirs)
    ts = Poly.variables(k)
    out = []
    for i, b in enumerate(base):
        p = Poly.const(k, Fraction(b))
        for t, v in zip(ts, dirs):
            if v[i]:
                p = p + t.scale(Fraction(v[i]))
        out.append(p)
    return out


def conic_plane_restriction(a: PForm, base: Sequence, dirs: Sequence[Sequence], p, d: int,
                            mode: Optional[Mode] = None) -> Optional[ConicRecord]:
    """Restrict ``a`` to the affine plane ``base + span(dirs)`` and test for a conic point at ``p``."""
    q = a.formdeg
    n = a.nvars
    if len(dirs) != q + 2:
        raise ValueError(f"a {q}-form needs a {q + 2}-dimensional plane, got {len(dirs)} directions")
    if any(len(v) != n for v in dirs) or len(base) != n:
        raise ValueError("plane spec does not match the ambient dimension")
    if bareiss_rank(dirs) != len(dirs):
        raise ValueError("plane directions are linearly dependent")
    p = _pt(p)
    delta = [x - Fraction(b) for x, b in zip(p, base)]
    # solve sum_j t_j dirs[j] = delta
    aug = [[Fraction(dirs[j][i]) for j in range(len(dirs))] + [delta[i]] for i in range(n)]
    sol = nullspace(aug)
    t = None
    for v in sol:
        if v[-1]:
            t = [-x / v[-1] for x in v[:-1]]
            break
    if t is None:
        raise ValueError("plane does not contain the point")
    restricted = pullback(_affine_images(base, dirs), a)
    return is_conic_ngk_at(restricted, t, d, mode)


# ---------------------------------------------------------------------------
# Symmetries and quasi-homogeneity
# ---------------------------------------------------------------------------

@dataclass
class TangentSymmetry:
    contracts_form: bool
    contracts_derivative: bool
    lie_identity: bool

    def __bool__(self):
        return self.contracts_form and self.contracts_derivative


def _tangent_prob(a: PForm, Y: PVec, mode: Mode) -> TangentSymmetry:
    """The three identities of ``verify_tangent_symmetry`` evaluated at random points."""
    p, n = mode.prime, a.nvars
    c1 = c2 = lie = True
    for r in mode.points(n, 4):
        cache = point_cache(r, p)
        grads: dict = {}
        A, D = a.jet1_mod(r, p, cache, grads)
        Yj = [value_and_gradient_mod(c, r, p, cache) for c in Y.comps]
        y = [v for v, _ in Yj]
        if a.formdeg and const_contract(y, A, p):
            c1 = False
        iyd = const_contract(y, D, p)
        if iyd:
            c2 = False
        lhs = dict(iyd)
        if a.formdeg:
            # d(i_Y a) at r from the 1-jets of Y and a (product rule)
            for I, g in grads.items():
                aI = A.get(I, 0)
                for k, i in enumerate(I):
                    yv, yg = Yj[i]
                    K = I[:k] + I[k + 1:]
                    sgn = -1 if k % 2 else 1
                    for j in range(n):
                        if j in K:
                            continue
                        df = (yg[j] * aI + yv * g[j]) % p
                        if not df:
                            continue
                        pos = sum(1 for x in K if x < j)
                        key = K[:pos] + (j,) + K[pos:]
                        lhs[key] = (lhs.get(key, 0) + (-sgn if pos % 2 else sgn) * df) % p
        if {k: v for k, v in lhs.items() if v} != A:
            lie = False
    return TangentSymmetry(c1, c2, lie)


def lie_identity_check(a: PForm, Y: PVec, mode: Mode = EXACT) -> bool:
    """``L_Y a == a``; the probabilistic mode evaluates Cartan's formula at random points."""
    if mode.exact:
        return lie_derivative(Y, a) == a
    return _tangent_prob(a, Y, mode).lie_identity


def verify_tangent_symmetry(a: PForm, Y: PVec, mode: Mode = EXACT) -> TangentSymmetry:
    """``i_Y a == 0`` and ``i_Y da == 0``; also reports whether ``L_Y a == a``."""
    if a.nvars != Y.nvars:
        raise ValueError("variable-count mismatch")
    if not mode.exact:
        return _tangent_prob(a, Y, mode)
    da = exterior_derivative(a)
    c1 = a.formdeg == 0 or interior_product(Y, a).is_zero()
    c2 = interior_product(Y, da).is_zero()
    return TangentSymmetry(c1, c2, lie_derivative(Y, a) == a)


@dataclass
class QuasiHomogeneity:
    lam: Fraction
    one_minus_trace: Optional[Fraction]


def quasi_homogeneity_check(S: PVec, X: PVec) -> Optional[QuasiHomogeneity]:
    """The rational ``lam`` with ``[S, X] == lam X``, if any."""
    if X.is_zero():
        raise ValueError("X must be nonzero")
    br = lie_bracket(S, X)
    i = next(k for k, c in enumerate(X.comps) if not c.is_zero())
    e, c = X[i].leading_term()
    lam = Fraction(br[i].coeff(e)) / Fraction(c)
    if br != X.scale(lam):
        return None
    omt = None
    if all(s.is_zero() or s.homogeneous_degree() == 1 for s in S.comps):
        omt = 1 - sum((Fraction(S[k].coeff(tuple(int(j == k) for j in range(S.nvars))))
                       for k in range(S.nvars)), Fraction(0))
    return QuasiHomogeneity(lam, omt)


# ---------------------------------------------------------------------------
# Classification of singularities of vector fields
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    nondegenerate: bool
    kupka_type: bool
    hyperbolic: Optional[bool]
    mode: str
    info: LinearPartInfo

    @property
    def hyperbolic_label(self) -> str:
        if self.hyperbolic is None:
            return "inconclusive"
        return "yes" if self.hyperbolic else "no"


def _hyperbolic(info: LinearPartInfo) -> Tuple[Optional[bool], str]:
    n = len(info.matrix)
    if info.determinant == 0:
        return False, "exact"
    ev = info.eigen
    real = len(ev["rational"])
    rest = ev["residual"]
    if n == 1:
        return True, "exact"
    if real >= 2:
        return False, "exact"
    if len(rest) == 3:
        disc = ev["quadratic_discriminant"]
        if disc >= 0:
            return False, "exact"
        a, b, _ = rest
        # complex pair mu, conj(mu): mu/conj(mu) is real iff mu is purely imaginary
        return b != 0, "exact"
    vals = ev["numerical"] + [complex(float(r)) for r in ev["rational"]]
    worst = min(abs((vals[i] / vals[j]).imag) for i in range(len(vals)) for j in range(len(vals)) if i != j)
    if worst > EIGEN_TOL:
        return True, "numerical"
    return None, "numerical"


def classify_singularity_1d(X, p=None) -> Classification:
    """Classify the singularity of a field at ``p`` (or of a given linear part)."""
    if isinstance(X, PVec):
        if p is None:
            raise ValueError("a point is required for a vector field")
        p = _pt(p)
        if any(X.evaluate(p)):
            raise ValueError("field does not vanish at the point")
        info = linear_part_info(X.jacobian_at(p))
    elif isinstance(X, LinearPartInfo):
        info = X
    else:
        info = linear_part_info(X)
    hyp, mode = _hyperbolic(info)
    return Classification(info.determinant != 0, info.trace != 0, hyp, mode, info)


# ---------------------------------------------------------------------------
# Charts, restrictions and transversal types
# ---------------------------------------------------------------------------

def dehomogenize(a: PForm, chart: int) -> PForm:
    """Restrict a form on N variables to the affine chart ``x_chart = 1``."""
    n = a.nvars
    y = Poly.variables(n - 1)
    images = [y[i] if i < chart else (Poly.one(n - 1) if i == chart else y[i - 1]) for i in range(n)]
    return pullback(images, a)


def restrict_to_hyperplane(a: PForm, j: int, value) -> PForm:
    n = a.nvars
    y = Poly.variables(n - 1)
    images = [y[i] if i < j else (Poly.const(n - 1, Fraction(value)) if i == j else y[i - 1])
              for i in range(n)]
    return pullback(images, a)


def _field_from_codim_one_form(b: PForm) -> PVec:
    """The Y with ``b == i_Y(dx0^...^dx{N-1})`` for an (N-1)-form b."""
    n = b.nvars
    full = tuple(range(n))
    return PVec([(-b[full[:i] + full[i + 1:]] if i % 2 else b[full[:i] + full[i + 1:]]) for i in range(n)])


@dataclass
class TransversalType:
    chart: int
    hyperplane: int
    point: Tuple[Fraction, ...]
    field: PVec
    classification: Classification


def transversal_type_at(a: PForm, p, chart: Optional[int] = None) -> TransversalType:
    """Transversal type of a homogeneous form at a Kupka point.

    The form is read in the chart ``x_chart = 1`` (N-1 affine variables).  An
    (N-2)-form there is already ``i_Y`` of the volume form.  An (N-3)-form is
    first cut by a hyperplane ``x_j = p_j`` transverse to its rotational.  The
    linear part of ``Y`` at ``p`` is then classified.
    """
    p = _pt(p)
    if chart is None:
        chart = next(k for k, x in enumerate(p) if x)
    if not p[chart]:
        raise ValueError("point is not in the chosen chart")
    if not kupka_at(a, p):
        raise ValueError("point is not a Kupka point")
    ac = dehomogenize(a, chart)
    pc = tuple(x / p[chart] for i, x in enumerate(p) if i != chart)
    if ac.formdeg == ac.nvars - 1:
        # already a field in the chart: the singularity is its own transversal type
        Y = _field_from_codim_one_form(ac)
        return TransversalType(chart, -1, p, Y, classify_singularity_1d(Y, pc))
    if ac.formdeg != ac.nvars - 2:
        raise ValueError("transversal type needs formdeg N-3 or N-2 on N homogeneous variables")
    Zp = rotational(ac).evaluate(pc)
    j = next(k for k, x in enumerate(Zp) if x)
    b = restrict_to_hyperplane(ac, j, pc[j])
    ph = tuple(x for i, x in enumerate(pc) if i != j)
    Y = _field_from_codim_one_form(b)
    return TransversalType(chart, j, p, Y, classify_singularity_1d(Y, ph))


# ---------------------------------------------------------------------------
# Counting singular points on P^2
# ---------------------------------------------------------------------------

def sing_count_p2(G: Union[Foliation1D, PVec], seed: int = 0) -> int:
    """Number of singular points of a foliation on P^2, counted with multiplicity.

    After a random linear change of coordinates that puts no singular point
    on the line ``y2 = 0``, the singular points are the common zeros of
    ``A = X0 - y0 X2`` and ``B = X1 - y1 X2`` in the chart ``y2 = 1``; ``B``
    is then monic in ``y1`` up to a constant, so the count is the degree of
    ``Res_{y1}(A, B)``.
    """
    X = G.X if isinstance(G, Foliation1D) else G
    if X.nvars != 3:
        raise ValueError("sing_count_p2 needs a field on three variables")
    d = X.homogeneous_degree()
    if d is None or d is ANY_DEGREE:
        raise ValueError("field must be homogeneous and nonzero")
    x = Poly.variables(3)
    minors = [x[i] * X[j] - x[j] * X[i] for i, j in combinations(range(3), 2)]
    g = gcd_list(minors)
    if g.is_zero() or not g.is_constant():
        raise ValueError("singular set is positive-dimensional")
    rng = random.Random(seed)
    for _ in range(100):
        T = _random_gl(3, rng)
        Tinv = inverse(T)
        Xt = [c.substitute(_linear_images(T, 3)) for c in X.comps]
        Xs = [sum((Xt[k].scale(Tinv[i][k]) for k in range(3) if Tinv[i][k]), Poly.zero(3)) for i in range(3)]
        if Xs[2].coeff((0, d, 0)) == 0:
            continue
        zero = Poly.zero(3)
        line = [Xs[2].substitute([x[0], x[1], zero]),
                (x[0] * Xs[1] - x[1] * Xs[0]).substitute([x[0], x[1], zero])]
        gl = gcd_list(line)
        if gl.is_zero() or not gl.is_constant():
            continue
        one = Poly.one(3)
        A = (Xs[0] - x[0] * Xs[2]).substitute([x[0], x[1], one])
        B = (Xs[1] - x[1] * Xs[2]).substitute([x[0], x[1], one])
        r = resultant(A, B, 1)
        if r.is_zero():
            raise ValueError("singular set is positive-dimensional")
        return r.total_degree()
    raise RuntimeError("no generic coordinate change found")


# ---------------------------------------------------------------------------
# Full point analysis
# ---------------------------------------------------------------------------

def analyze_point(a: PForm, p, d: Optional[int] = None, plane: Optional[dict] = None,
                  mode: Optional[Mode] = None) -> PointReport:
    p = _pt(p)
    if len(p) != a.nvars:
        raise ValueError(f"point has {len(p)} coordinates, form lives on {a.nvars} variables")
    sing = singular_at(a, p)
    rep = PointReport(p, sing, sing and kupka_at(a, p))
    if a.formdeg == a.nvars - 2:
        info = rotational_linear_part(a, p)
        rep.rot_linear_part = info.matrix
        rep.is_nilpotent_rot = info.is_nilpotent
    else:
        rep.notes.append("rotational linear part needs an (N-2)-form; skipped")
    if d is not None:
        if plane is not None:
            rec = conic_plane_restriction(a, plane["base"], plane["dirs"], p, d, mode)
            rep.notes.append("conic test on the restriction to the given plane")
        elif a.formdeg == a.nvars - 2 and sing:
            rec, why = conic_diagnose(a, p, d, mode)
            if rec is None:
                rep.notes.append(f"not conic NGK of degree {d}: {why}")
        else:
            rec = None
            rep.notes.append("conic test skipped")
        if rec is not None and not rep.is_singular:
            rec = None
        rep.conic_ngk = rec
    return rep
