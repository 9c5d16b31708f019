"""Polynomial differential forms and vector fields on affine N-space.

Forms store their components on strictly increasing index tuples, so
``dx0^dx2`` lives under the key ``(0, 2)``.  Interior products contract the
first slot: ``i_v(dx_I) = sum_k (-1)**k v_{I_k} dx_{I minus I_k}``.  The
volume form is ``dx0^...^dx{N-1}`` with coefficient +1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .ratpoly import ANY_DEGREE, Poly, _norm, evaluate_mod, point_cache, value_and_gradient_mod

__all__ = [
    "PForm",
    "PVec",
    "Jet",
    "wedge",
    "exterior_derivative",
    "interior_product",
    "contract_basis",
    "lie_derivative",
    "lie_bracket",
    "pullback",
    "rotational",
    "jet_at",
    "homogeneous_part",
    "volume_form",
    "radial_field",
    "constant_field",
    "one_form",
]

Key = Tuple[int, ...]


def _merge(I: Key, J: Key) -> Tuple[int, Optional[Key]]:
    """Sign and sorted key of ``dx_I ^ dx_J``; sign 0 when they overlap."""
    inversions = 0
    for j in J:
        for i in I:
            if i == j:
                return 0, None
            if i > j:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(I + J))


class PForm:
    """Polynomial differential ``formdeg``-form on ``nvars``-space."""

    __slots__ = ("nvars", "formdeg", "_comps")

    def __init__(self, nvars: int, formdeg: int, comps: Optional[Mapping[Sequence[int], Poly]] = None):
        if formdeg < 0:
            raise ValueError("form degree must be non-negative")
        clean: Dict[Key, Poly] = {}
        for key, p in (comps or {}).items():
            key = tuple(key)
            if len(key) != formdeg:
                raise ValueError(f"key {key} does not have length {formdeg}")
            if any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"key {key} is not strictly increasing")
            if key and not (0 <= key[0] and key[-1] < nvars):
                raise ValueError(f"key {key} out of range for {nvars} variables")
            if not isinstance(p, Poly):
                p = Poly.const(nvars, p)
            if p.nvars != nvars:
                raise ValueError(f"component at {key} has {p.nvars} variables, expected {nvars}")
            if not p.is_zero():
                clean[key] = p
        self.nvars = nvars
        self.formdeg = formdeg
        self._comps = clean

    @classmethod
    def _raw(cls, nvars, formdeg, comps):
        a = object.__new__(cls)
        a.nvars, a.formdeg, a._comps = nvars, formdeg, comps
        return a

    @classmethod
    def zero(cls, nvars: int, formdeg: int) -> "PForm":
        return cls._raw(nvars, formdeg, {})

    @classmethod
    def function(cls, p: Poly) -> "PForm":
        return cls(p.nvars, 0, {(): p})

    @property
    def comps(self) -> Dict[Key, Poly]:
        return dict(self._comps)

    def items(self):
        return self._comps.items()

    def __getitem__(self, key) -> Poly:
        return self._comps.get(tuple(key), Poly.zero(self.nvars))

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self):
        return bool(self._comps)

    # -- linear structure -----------------------------------------------
    def _same(self, other: "PForm"):
        if not isinstance(other, PForm):
            raise TypeError("expected a PForm")
        if other.nvars != self.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
        if other.formdeg != self.formdeg:
            raise ValueError(f"form-degree mismatch: {self.formdeg} vs {other.formdeg}")

    def __add__(self, other):
        self._same(other)
        out = dict(self._comps)
        for k, p in other._comps.items():
            s = out[k] + p if k in out else p
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PForm._raw(self.nvars, self.formdeg, out)

    def __neg__(self):
        return PForm._raw(self.nvars, self.formdeg, {k: -p for k, p in self._comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PForm":
        """Multiply by a rational number or a polynomial function."""
        if isinstance(c, Poly):
            if c.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            out = {k: p * c for k, p in self._comps.items()}
        else:
            out = {k: p.scale(c) for k, p in self._comps.items()}
        return PForm(self.nvars, self.formdeg, out)

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return (self.nvars, self.formdeg, self._comps) == (other.nvars, other.formdeg, other._comps)

    def __hash__(self):
        return hash((self.nvars, self.formdeg, frozenset(self._comps.items())))

    # -- coefficient-wise operations --------------------------------------
    def map_coeffs(self, fn) -> "PForm":
        return PForm(self.nvars, self.formdeg, {k: fn(p) for k, p in self._comps.items()})

    def coefficient_degree(self):
        """Common homogeneous degree of the coefficients (None if mixed)."""
        degs = set()
        for p in self._comps.values():
            d = p.homogeneous_degree()
            if d is None:
                return None
            degs.add(d)
        if not degs:
            return ANY_DEGREE
        return degs.pop() if len(degs) == 1 else None

    def evaluate(self, pt: Sequence) -> Dict[Key, Fraction]:
        """Constant form ``a(pt)`` as a dict of nonzero values."""
        out = {}
        for k, p in self._comps.items():
            v = p.evaluate(pt)
            if v:
                out[k] = v
        return out

    def vanishes_at(self, pt: Sequence) -> bool:
        return not self.evaluate(pt)

    def eval_mod(self, pt: Sequence[int], prime: int) -> Dict[Key, int]:
        out = {}
        cache = point_cache(pt, prime)
        for k, p in self._comps.items():
            v = evaluate_mod(p, pt, prime, cache)
            if v:
                out[k] = v
        return out

    def jet1_mod(self, pt: Sequence[int], prime: int, cache=None,
                 grads: Optional[dict] = None) -> Tuple[Dict[Key, int], Dict[Key, int]]:
        """Values ``a(pt)`` and ``da(pt)`` modulo ``prime``, from one pass over the terms.

        When ``grads`` is a dict it receives the gradient of every component.
        """
        if cache is None:
            cache = point_cache(pt, prime)
        vals: Dict[Key, int] = {}
        dvals: Dict[Key, int] = {}
        for I, c in self._comps.items():
            v, g = value_and_gradient_mod(c, pt, prime, cache)
            if grads is not None:
                grads[I] = g
            if v:
                vals[I] = v
            for j, gj in enumerate(g):
                if gj and j not in I:
                    pos = sum(1 for i in I if i < j)
                    K = I[:pos] + (j,) + I[pos:]
                    dvals[K] = (dvals.get(K, 0) + (-gj if pos % 2 else gj)) % prime
        return vals, {k: v for k, v in dvals.items() if v}

    def shift(self, p: Sequence) -> "PForm":
        """The form in coordinates ``y`` centered at ``p`` (``x = p + y``)."""
        return self.map_coeffs(lambda c: c.shift(p))

    def translate(self, p: Sequence) -> "PForm":
        """Push the form forward by ``x -> x + p`` (coefficients become ``c(x - p)``)."""
        return self.shift([-Fraction(x) for x in p])

    def __str__(self):
        from .text import format_form

        return format_form(self)

    def __repr__(self):
        return f"PForm(nvars={self.nvars}, formdeg={self.formdeg}, {str(self)!r})"


class PVec:
    """Polynomial vector field ``sum_i comps[i] d/dx_i``."""

    __slots__ = ("nvars", "comps")

    def __init__(self, comps: Sequence[Poly]):
        comps = tuple(comps)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = comps[0].nvars
        if len(comps) != n:
            raise ValueError(f"{len(comps)} components given for {n} variables")
        if any(c.nvars != n for c in comps):
            raise ValueError("components live in different rings")
        self.nvars = n
        self.comps = comps

    @classmethod
    def zero(cls, nvars: int) -> "PVec":
        return cls([Poly.zero(nvars)] * nvars)

    def __getitem__(self, i) -> Poly:
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def _same(self, other):
        if not isinstance(other, PVec):
            raise TypeError("expected a PVec")
        if other.nvars != self.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        self._same(other)
        return PVec([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._same(other)
        return PVec([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return PVec([-a for a in self.comps])

    def scale(self, c) -> "PVec":
        if isinstance(c, Poly):
            return PVec([a * c for a in self.comps])
        return PVec([a.scale(c) for a in self.comps])

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, PVec):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def apply(self, f: Poly) -> Poly:
        """Directional derivative ``v(f) = sum_i v_i df/dx_i``."""
        total = Poly.zero(self.nvars)
        for i, c in enumerate(self.comps):
            if not c.is_zero():
                total = total + c * f.partial(i)
        return total

    def evaluate(self, pt: Sequence) -> Tuple:
        return tuple(c.evaluate(pt) for c in self.comps)

    def jacobian_at(self, pt: Sequence) -> List[List]:
        """Matrix ``[d v_i / d x_j](pt)``."""
        return [[c.partial(j).evaluate(pt) for j in range(self.nvars)] for c in self.comps]

    def homogeneous_degree(self):
        degs = set()
        for c in self.comps:
            d = c.homogeneous_degree()
            if d is None:
                return None
            if d is not ANY_DEGREE:
                degs.add(d)
        if not degs:
            return ANY_DEGREE
        return degs.pop() if len(degs) == 1 else None

    def shift(self, p: Sequence) -> "PVec":
        return PVec([c.shift(p) for c in self.comps])

    def __str__(self):
        from .text import format_vector_field

        return format_vector_field(self)

    def __repr__(self):
        return f"PVec({str(self)!r})"


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor expansion of a form, stored in coordinates centered at ``base``."""

    base: Tuple[Fraction, ...]
    order: int
    body: PForm

    def is_zero(self) -> bool:
        return self.body.is_zero()


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def volume_form(nvars: int) -> PForm:
    return PForm(nvars, nvars, {tuple(range(nvars)): Poly.one(nvars)})


def radial_field(nvars: int, center: Optional[Sequence] = None) -> PVec:
    """``sum_i (x_i - c_i) d/dx_i``; the Euler field when ``center`` is omitted."""
    xs = Poly.variables(nvars)
    if center is None:
        return PVec(xs)
    return PVec([x - _norm(Fraction(c)) for x, c in zip(xs, center)])


def constant_field(nvars: int, vec: Sequence) -> PVec:
    return PVec([Poly.const(nvars, Fraction(c)) for c in vec])


def one_form(coeffs: Sequence[Poly]) -> PForm:
    """``sum_i coeffs[i] dx_i``."""
    n = coeffs[0].nvars
    return PForm(n, 1, {(i,): c for i, c in enumerate(coeffs)})


# ---------------------------------------------------------------------------
# Exterior algebra
# ---------------------------------------------------------------------------

def _check_nvars(a, b):
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")


def wedge(a: PForm, b: PForm) -> PForm:
    _check_nvars(a, b)
    q = a.formdeg + b.formdeg
    out: Dict[Key, Poly] = {}
    if q > a.nvars:
        return PForm.zero(a.nvars, q)
    for I, p in a._comps.items():
        for J, r in b._comps.items():
            s, K = _merge(I, J)
            if not s:
                continue
            term = p * r
            if s < 0:
                term = -term
            out[K] = out[K] + term if K in out else term
    return PForm(a.nvars, q, out)


def exterior_derivative(a: PForm) -> PForm:
    n, q = a.nvars, a.formdeg
    if q >= n:
        return PForm.zero(n, q + 1)
    out: Dict[Key, Poly] = {}
    for I, p in a._comps.items():
        for j in range(n):
            if j in I:
                continue
            dp = p.partial(j)
            if dp.is_zero():
                continue
            pos = sum(1 for i in I if i < j)
            K = I[:pos] + (j,) + I[pos:]
            if pos % 2:
                dp = -dp
            out[K] = out[K] + dp if K in out else dp
    return PForm(n, q + 1, out)


def interior_product(v: PVec, a: PForm) -> PForm:
    _check_nvars(v, a)
    if a.formdeg == 0:
        raise ValueError("cannot contract a 0-form")
    out: Dict[Key, Poly] = {}
    for I, p in a._comps.items():
        for k, i in enumerate(I):
            vi = v.comps[i]
            if vi.is_zero():
                continue
            term = vi * p
            if k % 2:
                term = -term
            K = I[:k] + I[k + 1:]
            out[K] = out[K] + term if K in out else term
    return PForm(a.nvars, a.formdeg - 1, out)


def contract_basis(a: PForm, j: int) -> PForm:
    """``i_{e_j} a`` for the constant basis field ``e_j``."""
    if a.formdeg == 0:
        raise ValueError("cannot contract a 0-form")
    out = {}
    for I, p in a._comps.items():
        if j in I:
            k = I.index(j)
            out[I[:k] + I[k + 1:]] = -p if k % 2 else p
    return PForm._raw(a.nvars, a.formdeg - 1, out)


def lie_derivative(v: PVec, a: PForm) -> PForm:
    """``L_v a = i_v da + d(i_v a)`` (Cartan's formula)."""
    _check_nvars(v, a)
    first = interior_product(v, exterior_derivative(a))
    if a.formdeg == 0:
        return first
    return first + exterior_derivative(interior_product(v, a))


def lie_bracket(v: PVec, w: PVec) -> PVec:
    _check_nvars(v, w)
    return PVec([v.apply(wi) - w.apply(vi) for vi, wi in zip(v.comps, w.comps)])


def pullback(f: Sequence[Poly], a: PForm) -> PForm:
    """Pull ``a`` back along the polynomial map ``x_i = f[i](z)``."""
    f = list(f)
    if len(f) != a.nvars:
        raise ValueError(f"map has {len(f)} components, form lives on {a.nvars} variables")
    if not f:
        raise ValueError("empty map")
    m = f[0].nvars
    if any(g.nvars != m for g in f):
        raise ValueError("map components live in different rings")
    q = a.formdeg
    if q == 0:
        return PForm(m, 0, {(): c.substitute(f) for c in a._comps.values()})
    dF = [PForm(m, 1, {(j,): g.partial(j) for j in range(m)}) for g in f]
    cache: Dict[Key, PForm] = {}

    def dwedge(I: Key) -> PForm:
        if I not in cache:
            cache[I] = dF[I[0]] if len(I) == 1 else wedge(dwedge(I[:-1]), dF[I[-1]])
        return cache[I]

    out = PForm.zero(m, q)
    for I, c in a._comps.items():
        w = dwedge(I)
        if w.is_zero():
            continue
        out = out + w.scale(c.substitute(f))
    return out


def rotational(a: PForm) -> PVec:
    """The field ``Z`` with ``da = i_Z(dx0^...^dx{N-1})``."""
    n = a.nvars
    if a.formdeg != n - 2:
        raise ValueError(f"rotational needs an (N-2)-form; got formdeg {a.formdeg} on N={n}")
    da = exterior_derivative(a)
    full = tuple(range(n))
    comps = []
    for i in range(n):
        c = da[full[:i] + full[i + 1:]]
        comps.append(-c if i % 2 else c)
    Z = PVec(comps)
    if interior_product(Z, volume_form(n)) != da:  # pragma: no cover - convention guard
        raise AssertionError("rotational reconstruction failed")
    return Z


def jet_at(a: PForm, p: Sequence, k: int) -> Jet:
    if len(p) != a.nvars:
        raise ValueError(f"point has length {len(p)}, expected {a.nvars}")
    if k < 0:
        raise ValueError("jet order must be non-negative")
    base = tuple(Fraction(x) for x in p)
    body = a.map_coeffs(lambda c: c.shift(base).truncate(k))
    return Jet(base, k, body)


def homogeneous_part(j: Jet, r: int) -> PForm:
    if r > j.order:
        raise ValueError(f"degree {r} exceeds jet order {j.order}")
    return j.body.map_coeffs(lambda c: c.homogeneous_part(r))


# ---------------------------------------------------------------------------
# Constant forms (dicts key -> value), optionally modulo a prime
# ---------------------------------------------------------------------------

def const_wedge(a: Mapping[Key, int], b: Mapping[Key, int], mod: Optional[int] = None) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    for I, x in a.items():
        for J, y in b.items():
            s, K = _merge(I, J)
            if s:
                out[K] = out.get(K, 0) + s * x * y
    if mod is not None:
        return {k: v % mod for k, v in out.items() if v % mod}
    return {k: v for k, v in out.items() if v}


def const_contract(vec: Sequence, a: Mapping[Key, int], mod: Optional[int] = None) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    for I, x in a.items():
        for k, i in enumerate(I):
            if vec[i]:
                K = I[:k] + I[k + 1:]
                out[K] = out.get(K, 0) + (-1) ** k * vec[i] * x
    if mod is not None:
        return {k: v % mod for k, v in out.items() if v % mod}
    return {k: v for k, v in out.items() if v}


def const_contract_basis(a: Mapping[Key, int], j: int) -> Dict[Key, int]:
    out = {}
    for I, x in a.items():
        if j in I:
            k = I.index(j)
            out[I[:k] + I[k + 1:]] = -x if k % 2 else x
    return out


def basis_multivectors(nvars: int, r: int) -> Iterable[Key]:
    return combinations(range(nvars), r)
