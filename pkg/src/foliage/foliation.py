"""Foliations on projective space and the pull-back construction.

A one-dimensional foliation on P^m is a homogeneous vector field ``X`` on
``m+1`` variables; it is turned into the (m-1)-form ``Omega = i_R i_X dV``.
Codimension-q foliations are stored as homogeneous q-forms ``eta`` with
``i_R eta == 0``; the degree is the coefficient degree minus one.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .exterior import (
    PForm,
    PVec,
    _merge,
    const_contract,
    const_contract_basis,
    const_wedge,
    exterior_derivative,
    interior_product,
    lie_bracket,
    pullback,
    radial_field,
    volume_form,
    wedge,
)
from .linalg import nullspace
from .ratmap import RationalMap
from .ratpoly import ANY_DEGREE, DEFAULT_PRIME, Poly, divexact, gcd_list

__all__ = [
    "Mode",
    "EXACT",
    "probabilistic",
    "Foliation1D",
    "FoliationQ",
    "omega_from_1d",
    "omega_displayed_sum",
    "pullback_foliation",
    "pullback_displayed_sum",
    "predicted_degree",
    "degree_of",
    "radial_check",
    "euler_relation_check",
    "is_decomposable_everywhere",
    "is_integrable",
    "kernel_at",
    "forms_proportional",
]


@dataclass(frozen=True)
class Mode:
    """How polynomial identities are decided.

    ``exact`` expands both sides over Q.  ``probabilistic`` evaluates at
    ``trials`` random points modulo ``prime``; a failure is then certain and
    a pass is wrong with probability at most ``(degree / prime) ** trials``.
    """

    kind: str = "exact"
    prime: int = DEFAULT_PRIME
    trials: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "probabilistic"):
            raise ValueError(f"unknown mode {self.kind!r}")
        if self.trials < 1:
            raise ValueError("need at least one trial")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def points(self, nvars: int, salt: int = 0) -> List[List[int]]:
        rng = random.Random(self.seed * 1_000_003 + salt)
        return [[rng.randrange(1, self.prime) for _ in range(nvars)] for _ in range(self.trials)]


EXACT = Mode()


def probabilistic(prime: int = DEFAULT_PRIME, trials: int = 2, seed: int = 0) -> Mode:
    return Mode("probabilistic", prime, trials, seed)


def predicted_degree(nu: int, d: int, m: int) -> int:
    """Degree ``(d+m)nu - m`` of the pull-back of a degree-d foliation on P^m by a generic degree-nu map."""
    return (d + m) * nu - m


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------

def _homogeneous_k(a: PForm) -> int:
    k = a.coefficient_degree()
    if k is None:
        raise ValueError("form has inhomogeneous coefficients")
    return k


def radial_check(a: PForm, mode: Mode = EXACT) -> bool:
    """``i_R a == 0``."""
    if a.formdeg == 0:
        raise ValueError("cannot contract a 0-form")
    if mode.exact:
        return interior_product(radial_field(a.nvars), a).is_zero()
    for r in mode.points(a.nvars, 1):
        if const_contract(r, a.eval_mod(r, mode.prime), mode.prime):
            return False
    return True


def euler_relation_check(a: PForm, mode: Mode = EXACT) -> bool:
    """``i_R da == (k+q) a`` for coefficients homogeneous of degree k."""
    k = _homogeneous_k(a)
    if k is ANY_DEGREE:
        return True
    factor = k + a.formdeg
    if mode.exact:
        da = exterior_derivative(a)
        return interior_product(radial_field(a.nvars), da) == a.scale(factor)
    p = mode.prime
    for r in mode.points(a.nvars, 2):
        A, D = a.jet1_mod(r, p)
        lhs = const_contract(r, D, p)
        rhs = {key: v * factor % p for key, v in A.items()}
        if lhs != {key: v for key, v in rhs.items() if v}:
            return False
    return True


def _contractions(nvars: int, q: int):
    """For each basis (q-1)-vector J: map from 1-form index to (sign, source key)."""
    for J in combinations(range(nvars), q - 1):
        rest = [i for i in range(nvars) if i not in J]
        b = {}
        for i in rest:
            # dx_K = s dx_J ^ dx_i, and contracting J slot by slot leaves +dx_i
            s, K = _merge(J, (i,))
            b[i] = (s, K)
        yield J, b


class _ProductCache:
    def __init__(self, left: PForm, right: PForm, symmetric: bool):
        self.left, self.right, self.symmetric = left, right, symmetric
        self.memo: Dict = {}

    def __call__(self, I, K) -> Poly:
        key = (min(I, K), max(I, K)) if self.symmetric else (I, K)
        if key not in self.memo:
            self.memo[key] = self.left[key[0]] * self.right[key[1]]
        return self.memo[key]


def _battery_exact(a: PForm, with_frobenius: bool) -> bool:
    n, q = a.nvars, a.formdeg
    if q == 0:
        return True
    da = exterior_derivative(a) if with_frobenius else None
    checks = []
    if q >= 2:
        checks.append((a, _ProductCache(a, a, True)))
    if with_frobenius:
        checks.append((da, _ProductCache(a, da, False)))
    for target, cache in checks:
        tkeys = list(target._comps)
        for J, b in _contractions(n, q):
            # (i_J a) = sum_i s_i a_{K_i} dx_i, up to one global sign for J
            out: Dict = {}
            for i, (s, K) in b.items():
                if K not in a._comps:
                    continue
                for T in tkeys:
                    s2, key = _merge((i,), T)
                    if not s2:
                        continue
                    term = cache(K, T)
                    if s * s2 < 0:
                        term = -term
                    out[key] = out[key] + term if key in out else term
            if any(not v.is_zero() for v in out.values()):
                return False
    return True


def _battery_prob(a: PForm, with_frobenius: bool, mode: Mode) -> bool:
    n, q = a.nvars, a.formdeg
    if q == 0:
        return True
    p = mode.prime
    for r in mode.points(n, 3):
        A, D = a.jet1_mod(r, p)
        for J in combinations(range(n), q - 1):
            B = A
            for j in J:
                B = const_contract_basis(B, j)
            if q >= 2 and const_wedge(B, A, p):
                return False
            if with_frobenius and const_wedge(B, D, p):
                return False
    return True


def is_decomposable_everywhere(a: PForm, mode: Mode = EXACT) -> bool:
    """Plucker identities ``(i_J a) ^ a == 0`` for every constant basis (q-1)-vector J."""
    if mode.exact:
        return _battery_exact(a, False)
    return _battery_prob(a, False, mode)


def is_integrable(a: PForm, mode: Mode = EXACT) -> bool:
    """Plucker identities plus ``(i_J a) ^ da == 0`` for every J."""
    if mode.exact:
        return _battery_exact(a, True)
    return _battery_prob(a, True, mode)


def kernel_at(a: PForm, p: Sequence) -> List[List[Fraction]]:
    """Basis of ``{v : i_v a(p) == 0}``."""
    if a.formdeg == 0:
        raise ValueError("cannot contract a 0-form")
    A = a.evaluate(p)
    if not A:
        raise ValueError("form vanishes at the point (singular point)")
    n = a.nvars
    rows: Dict = {}
    for I, x in A.items():
        for k, i in enumerate(I):
            K = I[:k] + I[k + 1:]
            row = rows.setdefault(K, [Fraction(0)] * n)
            row[i] += x if k % 2 == 0 else -x
    return nullspace(list(rows.values()), n)


def forms_proportional(a: PForm, b: PForm) -> Optional[Fraction]:
    """The rational ``c`` with ``a == c*b`` (both nonzero), else None."""
    if a.nvars != b.nvars or a.formdeg != b.formdeg or a.is_zero() or b.is_zero():
        return None
    if set(a._comps) != set(b._comps):
        return None
    key = next(iter(b._comps))
    ea, eb = a[key].leading_term(), b[key].leading_term()
    if ea[0] != eb[0]:
        return None
    c = Fraction(ea[1]) / Fraction(eb[1])
    return c if a == b.scale(c) else None


# ---------------------------------------------------------------------------
# Foliation objects
# ---------------------------------------------------------------------------

class Foliation1D:
    """One-dimensional foliation on P^m given by a homogeneous field of degree d."""

    def __init__(self, X: PVec, m: Optional[int] = None, d: Optional[int] = None):
        if m is not None and m + 1 != X.nvars:
            raise ValueError(f"P^{m} needs {m + 1} variables, field has {X.nvars}")
        deg = X.homogeneous_degree()
        if deg is None:
            raise ValueError("field components are not homogeneous of a common degree")
        if deg is ANY_DEGREE:
            raise ValueError("zero field defines no foliation")
        if d is not None and d != deg:
            raise ValueError(f"field has degree {deg}, expected {d}")
        xs = Poly.variables(X.nvars)
        if all((xs[i] * X[j] - xs[j] * X[i]).is_zero()
               for i, j in combinations(range(X.nvars), 2)):
            raise ValueError("field is a multiple of the radial field")
        self.X = X
        self.m = X.nvars - 1
        self.d = deg

    @property
    def nvars(self) -> int:
        return self.m + 1

    def omega(self) -> PForm:
        return omega_from_1d(self)

    def __eq__(self, other):
        if not isinstance(other, Foliation1D):
            return NotImplemented
        return self.m == other.m and self.omega() == other.omega()

    def __hash__(self):
        return hash(self.omega())

    def __repr__(self):
        return f"Foliation1D(m={self.m}, d={self.d}, X={self.X})"


class FoliationQ:
    """Codimension-q foliation on P^n given by a homogeneous q-form.

    ``integrability`` selects how the Frobenius battery is run at
    construction; pass ``None`` to skip it (the caller then owns the claim).
    """

    def __init__(self, eta: PForm, n: Optional[int] = None, q: Optional[int] = None,
                 integrability: Optional[Mode] = probabilistic(),
                 removed_factor: Optional[Poly] = None, meta: Optional[dict] = None):
        if n is not None and n + 1 != eta.nvars:
            raise ValueError(f"P^{n} needs {n + 1} variables, form has {eta.nvars}")
        if q is not None and q != eta.formdeg:
            raise ValueError(f"form degree {eta.formdeg} does not match codimension {q}")
        if eta.formdeg < 1:
            raise ValueError("codimension must be at least 1")
        if eta.is_zero():
            raise ValueError("zero form defines no foliation")
        k = eta.coefficient_degree()
        if k is None:
            raise ValueError("coefficients are not homogeneous of a common degree")
        if not radial_check(eta):
            raise ValueError("form is not annihilated by the radial field")
        if integrability is not None and not is_integrable(eta, integrability):
            raise ValueError("form is not integrable")
        self.eta = eta
        self.n = eta.nvars - 1
        self.q = eta.formdeg
        self.theta = k - 1
        self.removed_factor = removed_factor
        self.integrability_mode = integrability
        self.meta = dict(meta or {})

    @property
    def removed_degree(self) -> int:
        return 0 if self.removed_factor is None else self.removed_factor.total_degree()

    def __repr__(self):
        return f"FoliationQ(n={self.n}, q={self.q}, theta={self.theta})"


def degree_of(F) -> int:
    eta = F.eta if isinstance(F, FoliationQ) else F
    k = eta.coefficient_degree()
    if k is None or k is ANY_DEGREE:
        raise ValueError("form does not have a common coefficient degree")
    return k - 1


def omega_from_1d(G: Foliation1D) -> PForm:
    """``Omega = i_R i_X dV``."""
    n = G.nvars
    return interior_product(radial_field(n), interior_product(G.X, volume_form(n)))


def _hat2(n: int, i: int, k: int):
    return tuple(j for j in range(n) if j != i and j != k)


def omega_displayed_sum(G: Foliation1D) -> PForm:
    """``sum_{i<k} (-1)^(i+k+1) (x_k P_i - x_i P_k) dx_0^..^(no i, k)^..dx_m``."""
    n = G.nvars
    xs = Poly.variables(n)
    P = G.X.comps
    comps = {}
    for i, k in combinations(range(n), 2):
        c = xs[k] * P[i] - xs[i] * P[k]
        comps[_hat2(n, i, k)] = c if (i + k + 1) % 2 == 0 else -c
    return PForm(n, n - 2, comps)


def pullback_displayed_sum(f: RationalMap, G: Foliation1D) -> PForm:
    """The pull-back written over wedges of the ``dF_j`` (before any gcd removal)."""
    if f.m != G.m:
        raise ValueError(f"map targets P^{f.m}, foliation lives on P^{G.m}")
    F = list(f.comps)
    PF = [p.substitute(F) for p in G.X.comps]
    dF = [PForm(f.n + 1, 1, {(j,): g.partial(j) for j in range(f.n + 1)}) for g in F]
    total = PForm.zero(f.n + 1, G.m - 1)
    for i, k in combinations(range(G.m + 1), 2):
        c = F[k] * PF[i] - F[i] * PF[k]
        if (i + k + 1) % 2:
            c = -c
        w = None
        for j in _hat2(G.m + 1, i, k):
            w = dF[j] if w is None else wedge(w, dF[j])
        if w is None:
            w = PForm.function(Poly.one(f.n + 1))
        total = total + w.scale(c)
    return total


def pullback_foliation(f: RationalMap, G: Foliation1D,
                       integrability: Optional[Mode] = probabilistic()) -> FoliationQ:
    """``f^* G`` represented by ``f~^* Omega`` with any common coefficient factor removed."""
    if f.m != G.m:
        raise ValueError(f"map targets P^{f.m}, foliation lives on P^{G.m}")
    f.require_valid()
    eta = pullback(list(f.comps), omega_from_1d(G))
    if eta.is_zero():
        raise ValueError("pull-back form vanishes identically (degenerate pair)")
    g = gcd_list(list(eta._comps.values()))
    removed = None
    if not g.is_constant():
        removed = g
        eta = eta.map_coeffs(lambda c: divexact(c, g))
    meta = {
        "nu": f.nu,
        "d": G.d,
        "m": G.m,
        "predicted_degree": predicted_degree(f.nu, G.d, G.m),
    }
    return FoliationQ(eta, integrability=integrability, removed_factor=removed, meta=meta)


def bracket_euler_check(G: Foliation1D) -> bool:
    """``[R, X] == (d-1) X``."""
    return lie_bracket(radial_field(G.nvars), G.X) == G.X.scale(G.d - 1)

