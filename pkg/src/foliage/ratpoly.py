"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
coefficients.  Coefficients are Python ``int`` whenever they are integral and
:class:`fractions.Fraction` otherwise, so integer-heavy workloads stay on the
fast path.  Terms are ordered graded-lexicographically (total degree first,
then lexicographic with ``x0 > x1 > ...``).

:class:`ModPoly` is the reduction of a :class:`Poly` modulo a word-sized
prime; it backs :func:`identity_test_prob`.
"""
from __future__ import annotations

import heapq
import random
from math import prod
from operator import getitem, mul as _imul
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "ANY_DEGREE",
    "Poly",
    "ModPoly",
    "add",
    "mul",
    "neg",
    "scale",
    "partial",
    "evaluate",
    "homogeneous_degree",
    "divexact",
    "gcd_multivar",
    "gcd_list",
    "resultant",
    "reduce_mod",
    "identity_test_prob",
    "DEFAULT_PRIME",
]

Exp = Tuple[int, ...]
Coeff = Union[int, Fraction]

#: 2**61 - 1, a Mersenne prime used as the default identity-testing modulus.
DEFAULT_PRIME = 2305843009213693951


class _AnyDegree:
    """Degree marker of the zero polynomial (homogeneous of every degree)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DEGREE"

    def __reduce__(self):
        return (_AnyDegree, ())


ANY_DEGREE = _AnyDegree()


def _norm(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def _grlex_key(e: Exp):
    return (sum(e), e)


def _pack_width(maxdeg: int) -> int:
    return max(1, maxdeg.bit_length())


def _pack(e: Exp, bits: int) -> int:
    k = 0
    for x in e:
        k = (k << bits) | x
    return k


def _unpack(k: int, n: int, bits: int) -> Exp:
    mask = (1 << bits) - 1
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = k & mask
        k >>= bits
    return tuple(out)


class Poly:
    """Immutable sparse polynomial over Q in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        if not isinstance(nvars, int) or nvars < 1:
            raise ValueError("nvars must be a positive integer")
        clean: Dict[Exp, Coeff] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = _norm(c)
                if c:
                    c = _norm(clean.get(e, 0) + c)
                    if c:
                        clean[e] = c
                    else:
                        clean.pop(e, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exp, Coeff]) -> "Poly":
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = _norm(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Poly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variables(cls, nvars: int) -> List["Poly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    # -- basic queries ----------------------------------------------------
    @property
    def terms(self) -> Dict[Exp, Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        z = (0,) * self.nvars
        return not self._terms or (len(self._terms) == 1 and z in self._terms)

    def coeff(self, exp: Sequence[int]) -> Coeff:
        return self._terms.get(tuple(exp), 0)

    def constant_term(self) -> Coeff:
        return self._terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def support_vars(self) -> set:
        s = set()
        for e in self._terms:
            s.update(i for i, x in enumerate(e) if x)
        return s

    def sorted_terms(self) -> List[Tuple[Exp, Coeff]]:
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Exp, Coeff]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def leading_coefficient(self) -> Coeff:
        return self.leading_term()[1]

    def homogeneous_degree(self):
        return homogeneous_degree(self)

    def homogeneous_part(self, r: int) -> "Poly":
        return Poly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == r})

    def truncate(self, k: int) -> "Poly":
        """Drop every term of total degree above ``k``."""
        return Poly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) <= k})

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s) if type(s) is Fraction else s
            else:
                del out[e]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = _norm(c)
        if not c:
            return Poly.zero(self.nvars)
        if c == 1:
            return self
        return Poly._raw(self.nvars, {e: _norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (isinstance(other, Rational) and not isinstance(other, Poly)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.nvars, _mul_terms(self.nvars, self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return divexact(self, other)
        return self.scale(Fraction(1) / _norm(other))

    # -- calculus / evaluation -------------------------------------------
    def partial(self, i: int) -> "Poly":
        return partial(self, i)

    def evaluate(self, pt: Sequence) -> Coeff:
        return evaluate(self, pt)

    __call__ = evaluate

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: replace ``x_i`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        if not self._terms:
            m = images[0].nvars if images else self.nvars
            return Poly.zero(m)
        m = images[0].nvars
        for g in images:
            if g.nvars != m:
                raise ValueError("substitution images live in different rings")
        powers: List[Dict[int, Poly]] = [{0: Poly.one(m), 1: g} for g in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                h = k // 2
                cache[k] = power(i, h) * power(i, k - h)
            return cache[k]

        acc: Dict[Exp, Coeff] = {}
        for e, c in self._terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    pk = power(i, k)
                    term = pk if term is None else term * pk
            if term is None:
                term = Poly.one(m)
            for te, tc in term._terms.items():
                s = acc.get(te, 0) + tc * c
                if s:
                    acc[te] = s
                else:
                    acc.pop(te, None)
        return Poly._raw(m, {e: _norm(c) for e, c in acc.items() if c})

    def shift(self, p: Sequence) -> "Poly":
        """Taylor shift: the polynomial ``y -> self(p + y)``."""
        n = self.nvars
        if len(p) != n:
            raise ValueError(f"point has length {len(p)}, expected {n}")
        xs = Poly.variables(n)
        return self.substitute([xs[i] + _norm(Fraction(p[i])) for i in range(n)])

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Re-index into ``nvars`` variables, variable ``i`` going to ``positions[i]``."""
        out = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for i, k in enumerate(e):
                f[positions[i]] += k
            out[tuple(f)] = c
        return Poly._raw(nvars, out)

    # -- comparisons / display -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0,) * self.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        from .text import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.nvars}, {str(self)!r})"


def _mul_terms(n: int, ta: Mapping[Exp, Coeff], tb: Mapping[Exp, Coeff]) -> Dict[Exp, Coeff]:
    if not ta or not tb:
        return {}
    if len(ta) == 1 and len(tb) == 1:
        (ea, ca), = ta.items()
        (eb, cb), = tb.items()
        return {tuple(x + y for x, y in zip(ea, eb)): _norm(ca * cb)}
    da = max(sum(e) for e in ta)
    db = max(sum(e) for e in tb)
    bits = _pack_width(da + db)
    pa = [(_pack(e, bits), c) for e, c in ta.items()]
    pb = [(_pack(e, bits), c) for e, c in tb.items()]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    res: Dict[int, Coeff] = {}
    get = res.get
    for kb, cb in pb:
        for ka, ca in pa:
            k = ka + kb
            res[k] = get(k, 0) + ca * cb
    out = {}
    for k, c in res.items():
        if c:
            out[_unpack(k, n, bits)] = _norm(c) if type(c) is Fraction else c
    return out


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def _check_same(a: Poly, b: Poly):
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")


def add(a: Poly, b: Poly) -> Poly:
    _check_same(a, b)
    return a + b


def mul(a: Poly, b: Poly) -> Poly:
    _check_same(a, b)
    return a * b


def neg(a: Poly) -> Poly:
    return -a


def scale(a: Poly, c) -> Poly:
    return a.scale(c)


def partial(p: Poly, i: int) -> Poly:
    """Formal partial derivative with respect to ``x_i``."""
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    out = {}
    for e, c in p._terms.items():
        k = e[i]
        if k:
            f = e[:i] + (k - 1,) + e[i + 1:]
            out[f] = c * k
    return Poly._raw(p.nvars, out)


def evaluate(p: Poly, pt: Sequence) -> Coeff:
    if len(pt) != p.nvars:
        raise ValueError(f"point has length {len(pt)}, expected {p.nvars}")
    pt = [_norm(x if isinstance(x, (int, Fraction)) else Fraction(x)) for x in pt]
    total = 0
    for e, c in p._terms.items():
        t = c
        for x, k in zip(pt, e):
            if k:
                t *= x ** k
        total += t
    return _norm(total)


def homogeneous_degree(p: Poly):
    """Common total degree of all terms, ``None`` if mixed, ``ANY_DEGREE`` for 0."""
    if not p._terms:
        return ANY_DEGREE
    degs = {sum(e) for e in p._terms}
    return degs.pop() if len(degs) == 1 else None


# ---------------------------------------------------------------------------
# Exact division
# ---------------------------------------------------------------------------

def _div(c: Coeff, d: Coeff) -> Coeff:
    if type(c) is int and type(d) is int and c % d == 0:
        return c // d
    return _norm(Fraction(c) / d)


def divexact(a: Poly, b: Poly) -> Poly:
    """Quotient ``a / b``; raises ``ValueError`` when ``b`` does not divide ``a``."""
    _check_same(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return Poly.zero(a.nvars)
    n = a.nvars
    if len(b) == 1:
        (eb, cb), = b._terms.items()
        out = {}
        for e, c in a._terms.items():
            f = tuple(x - y for x, y in zip(e, eb))
            if min(f) < 0:
                raise ValueError("polynomial division is not exact")
            out[f] = _div(c, cb)
        return Poly._raw(n, out)
    maxdeg = max(a.total_degree(), b.total_degree())
    bits = _pack_width(maxdeg) + 1
    shift = bits * n

    def key(e):
        return (sum(e) << shift) | _pack(e, bits)

    lb_e, lb_c = b.leading_term()
    rest_b = [(e, c) for e, c in b._terms.items() if e != lb_e]
    rem: Dict[Exp, Coeff] = dict(a._terms)
    heap = [(-key(e), e) for e in rem]
    heapq.heapify(heap)
    quot: Dict[Exp, Coeff] = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = rem.pop(e, 0)
        if not c:
            continue
        f = tuple(x - y for x, y in zip(e, lb_e))
        if min(f) < 0:
            raise ValueError("polynomial division is not exact")
        q = _div(c, lb_c)
        quot[f] = q
        for eb, cb in rest_b:
            g = tuple(x + y for x, y in zip(f, eb))
            s = rem.get(g)
            if s is None:
                rem[g] = -q * cb
                heapq.heappush(heap, (-key(g), g))
            else:
                s = s - q * cb
                rem[g] = s
    if any(rem.values()):
        raise ValueError("polynomial division is not exact")
    return Poly._raw(n, {e: _norm(c) for e, c in quot.items()})


# ---------------------------------------------------------------------------
# Univariate helpers over Q (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _u_trim(c: List) -> List:
    while c and not c[-1]:
        c.pop()
    return c


def _u_rem(a: List, b: List) -> List:
    a = list(a)
    db = len(b) - 1
    lb = Fraction(b[-1])
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        s = len(a) - 1 - db
        for i in range(db + 1):
            a[s + i] -= q * b[i]
        a.pop()
        _u_trim(a)
    return a


def _u_gcd(a: List, b: List) -> List:
    a = _u_trim([Fraction(x) for x in a])
    b = _u_trim([Fraction(x) for x in b])
    while b:
        a, b = b, _u_rem(a, b)
    if not a:
        return []
    lc = a[-1]
    return [x / lc for x in a]


def _specialize_univariate(p: Poly, v: int, values: Sequence) -> List:
    """Coefficient list in ``x_v`` after substituting ``values`` for the other variables."""
    coeffs = [0] * (p.degree_in(v) + 1)
    for e, c in p._terms.items():
        t = c
        for i, k in enumerate(e):
            if i != v and k:
                t *= values[i] ** k
        coeffs[e[v]] += t
    return coeffs


def _certify_coprime(polys: Sequence[Poly], rng: random.Random, tries: int = 3) -> bool:
    """Exact certificate that the gcd of ``polys`` is constant.

    For each variable ``v`` a specialization of the remaining variables that
    keeps every leading coefficient in ``v`` nonzero maps any common divisor
    of positive ``v``-degree to a common univariate divisor of the same
    degree; a constant univariate gcd therefore rules such divisors out.
    """
    n = polys[0].nvars
    for v in range(n):
        degs = [p.degree_in(v) for p in polys]
        if min(degs) <= 0:
            continue
        certified = False
        for _ in range(tries):
            vals = [rng.randint(-97, 97) for _ in range(n)]
            g = None
            ok = True
            for p, dv in zip(polys, degs):
                u = _specialize_univariate(p, v, vals)
                if len(u) != dv + 1 or not u[-1]:
                    ok = False
                    break
                g = u if g is None else _u_gcd(g, u)
                if len(g) == 1:
                    break
            if ok and g is not None and len(_u_trim(list(g))) == 1:
                certified = True
                break
        if not certified:
            return False
    return True


# ---------------------------------------------------------------------------
# Recursive gcd with subresultant remainder sequences
# ---------------------------------------------------------------------------

def _to_uni(p: Poly, v: int) -> List[Poly]:
    d = p.degree_in(v)
    buckets: List[Dict[Exp, Coeff]] = [dict() for _ in range(d + 1)]
    for e, c in p._terms.items():
        buckets[e[v]][e[:v] + (0,) + e[v + 1:]] = c
    return [Poly._raw(p.nvars, b) for b in buckets]


def _from_uni(coeffs: Sequence[Poly], v: int) -> Poly:
    n = coeffs[0].nvars
    out = {}
    for k, c in enumerate(coeffs):
        for e, x in c._terms.items():
            out[e[:v] + (k,) + e[v + 1:]] = x
    return Poly._raw(n, out)


def _uni_trim(f: List[Poly]) -> List[Poly]:
    while f and f[-1].is_zero():
        f.pop()
    return f


def _uni_prem(f: List[Poly], g: List[Poly]) -> List[Poly]:
    df, dg = len(f) - 1, len(g) - 1
    r = list(f)
    lc = g[-1]
    N = df - dg + 1
    while len(r) - 1 >= dg and r:
        dr = len(r) - 1
        j = dr - dg
        N -= 1
        lr = r[-1]
        r = [c * lc for c in r]
        for i in range(dg + 1):
            r[j + i] = r[j + i] - g[i] * lr
        _uni_trim(r)
    if N > 0 and r:
        m = lc ** N
        r = [c * m for c in r]
    return r


def _uni_subresultants(f: List[Poly], g: List[Poly]):
    """Subresultant PRS of ``f`` and ``g`` (``deg f >= deg g``) and scalar subresultants."""
    n, m = len(f) - 1, len(g) - 1
    one = Poly.one(f[0].nvars)
    if not g:
        return [f], [one]
    R = [f, g]
    d = n - m
    b = one.scale((-1) ** (d + 1))
    h = [c * b for c in _uni_prem(f, g)]
    lc = g[-1]
    c = lc ** d
    S = [one, c]
    c = -c
    while h:
        k = len(h) - 1
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = [divexact(x, b) for x in _uni_prem(f, g)]
        _uni_trim(h)
        lc = g[-1]
        if d > 1:
            q = c ** (d - 1)
            c = divexact((-lc) ** d, q)
        else:
            c = -lc
        S.append(-c)
    return R, S


def _content_in(p: Poly, v: int) -> Poly:
    g = None
    for c in _to_uni(p, v):
        if c.is_zero():
            continue
        g = c if g is None else _gcd_rec(g, c)
        if g.is_constant():
            return Poly.one(p.nvars)
    return g if g is not None else Poly.zero(p.nvars)


def _gcd_rec(a: Poly, b: Poly) -> Poly:
    n = a.nvars
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return Poly.one(n)
    va, vb = a.support_vars(), b.support_vars()
    allv = va | vb
    v = max(allv)
    if v not in va:
        return _gcd_rec(a, _content_in(b, v))
    if v not in vb:
        return _gcd_rec(_content_in(a, v), b)
    if len(allv) == 1:
        ua = _specialize_univariate(a, v, [0] * n)
        ub = _specialize_univariate(b, v, [0] * n)
        g = _u_gcd(ua, ub)
        out = {}
        for k, c in enumerate(g):
            if c:
                e = [0] * n
                e[v] = k
                out[tuple(e)] = _norm(c)
        return Poly._raw(n, out)
    ca, cb = _content_in(a, v), _content_in(b, v)
    cont = _gcd_rec(ca, cb)
    pa, pb = divexact(a, ca), divexact(b, cb)
    fa, fb = _to_uni(pa, v), _to_uni(pb, v)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    R, _ = _uni_subresultants(fa, fb)
    last = R[-1]
    if len(last) - 1 == 0:
        return cont
    h = _from_uni(last, v)
    h = divexact(h, _content_in(h, v))
    return cont * h


def _monic(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return p.scale(Fraction(1) / Fraction(p.leading_coefficient()))


def gcd_multivar(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized to leading coefficient 1 (grlex)."""
    _check_same(a, b)
    if a.is_zero() or b.is_zero():
        return _monic(b if a.is_zero() else a)
    if a.is_constant() or b.is_constant():
        return Poly.one(a.nvars)
    if _certify_coprime([a, b], random.Random(0x5EED)):
        return Poly.one(a.nvars)
    return _monic(_gcd_rec(a, b))


def gcd_list(polys: Iterable[Poly]) -> Poly:
    """gcd of several polynomials (zero entries ignored; all-zero gives 0)."""
    polys = list(polys)
    if not polys:
        raise ValueError("gcd_list needs at least one polynomial")
    n = polys[0].nvars
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return Poly.zero(n)
    if any(p.is_constant() for p in polys):
        return Poly.one(n)
    if len(polys) == 1:
        return _monic(polys[0])
    if _certify_coprime(polys, random.Random(0x5EED)):
        return Poly.one(n)
    polys.sort(key=lambda p: (p.total_degree(), len(p)))
    g = polys[0]
    for p in polys[1:]:
        g = _gcd_rec(g, p)
        if g.is_constant():
            return Poly.one(n)
    return _monic(g)


def resultant(a: Poly, b: Poly, v: int) -> Poly:
    """Resultant of ``a`` and ``b`` with respect to ``x_v`` (a polynomial free of ``x_v``)."""
    _check_same(a, b)
    n = a.nvars
    if a.is_zero() or b.is_zero():
        return Poly.zero(n)
    fa, fb = _to_uni(a, v), _to_uni(b, v)
    da, db = len(fa) - 1, len(fb) - 1
    if da == 0 and db == 0:
        return Poly.one(n)
    if da == 0:
        return fa[0] ** db
    if db == 0:
        return fb[0] ** da
    sign = 1
    if da < db:
        fa, fb = fb, fa
        if (da * db) % 2:
            sign = -1
    R, S = _uni_subresultants(fa, fb)
    if len(R[-1]) - 1 > 0:
        return Poly.zero(n)
    return S[-1].scale(sign)


# ---------------------------------------------------------------------------
# Finite-field mirror and probabilistic identity testing
# ---------------------------------------------------------------------------

class ModPoly:
    """Polynomial with coefficients in Z/pZ, canonical like :class:`Poly`."""

    __slots__ = ("nvars", "prime", "_terms")

    def __init__(self, nvars: int, prime: int, terms: Optional[Mapping[Sequence[int], int]] = None):
        self.nvars = nvars
        self.prime = prime
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
            c = (clean.get(e, 0) + c) % prime
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean

    @classmethod
    def _raw(cls, nvars, prime, terms):
        p = object.__new__(cls)
        p.nvars, p.prime, p._terms = nvars, prime, terms
        return p

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def _check(self, other):
        if not isinstance(other, ModPoly):
            raise TypeError("expected ModPoly")
        if other.nvars != self.nvars or other.prime != self.prime:
            raise ValueError("ModPoly ring mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        p = self.prime
        for e, c in other._terms.items():
            s = (out.get(e, 0) + c) % p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return ModPoly._raw(self.nvars, p, out)

    def __neg__(self):
        p = self.prime
        return ModPoly._raw(self.nvars, p, {e: (-c) % p for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.prime
        raw = _mul_terms(self.nvars, self._terms, other._terms)
        return ModPoly._raw(self.nvars, p, {e: c % p for e, c in raw.items() if c % p})

    def partial(self, i: int) -> "ModPoly":
        p = self.prime
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k and (c * k) % p:
                out[e[:i] + (k - 1,) + e[i + 1:]] = (c * k) % p
        return ModPoly._raw(self.nvars, p, out)

    def evaluate(self, pt: Sequence[int]) -> int:
        p = self.prime
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t = t * pow(x, k, p) % p
            total += t
        return total % p

    __call__ = evaluate

    def __eq__(self, other):
        if not isinstance(other, ModPoly):
            return NotImplemented
        return (self.nvars, self.prime, self._terms) == (other.nvars, other.prime, other._terms)

    def __hash__(self):
        return hash((self.nvars, self.prime, frozenset(self._terms.items())))

    def __repr__(self):
        return f"ModPoly({self.nvars}, p={self.prime}, {len(self._terms)} terms)"


def _mod_coeff(c: Coeff, prime: int) -> int:
    if isinstance(c, int):
        return c % prime
    if c.denominator % prime == 0:
        raise ValueError(f"denominator {c.denominator} is divisible by {prime}")
    return c.numerator * pow(c.denominator, -1, prime) % prime


def reduce_mod(p: Poly, prime: int) -> ModPoly:
    """Image of ``p`` in (Z/prime)[x]; the denominators must be invertible."""
    out = {}
    for e, c in p._terms.items():
        r = _mod_coeff(c, prime)
        if r:
            out[e] = r
    return ModPoly._raw(p.nvars, prime, out)


class PointTables:
    """Powers and inverses of one point modulo a prime, shared by several evaluations."""

    __slots__ = ("pt", "prime", "powers", "_inv")

    def __init__(self, pt: Sequence[int], prime: int):
        self.pt = [x % prime for x in pt]
        self.prime = prime
        self.powers: List[List[int]] = [[1] for _ in pt]
        self._inv: Optional[List[int]] = None

    def table(self, i: int, k: int) -> List[int]:
        t = self.powers[i]
        if len(t) <= k:
            x, p = self.pt[i], self.prime
            v = t[-1]
            for _ in range(k + 1 - len(t)):
                v = v * x % p
                t.append(v)
        return t

    @property
    def inv(self) -> List[int]:
        if self._inv is None:
            self._inv = [pow(x, -1, self.prime) for x in self.pt]
        return self._inv


def point_cache(pt: Sequence[int], prime: int) -> PointTables:
    return PointTables(pt, prime)


def _terms_mod(p: Poly, pt: Sequence[int], prime: int, cache: Optional[PointTables]):
    """Exponents, per-term values ``c x^e`` (unreduced) and the tables used."""
    if len(pt) != p.nvars:
        raise ValueError(f"point has length {len(pt)}, expected {p.nvars}")
    cache = cache if cache is not None else PointTables(pt, prime)
    exps = list(p._terms)
    if not exps:
        return exps, [], cache
    tables = [cache.table(i, k) for i, k in enumerate(map(max, zip(*exps)))]
    vals = [(c if type(c) is int else _mod_coeff(c, prime)) * prod(map(getitem, tables, e))
            for e, c in p._terms.items()]
    return exps, vals, cache


def evaluate_mod(p: Poly, pt: Sequence[int], prime: int, cache: Optional[PointTables] = None) -> int:
    """``p(pt) mod prime`` without building the reduced polynomial."""
    return sum(_terms_mod(p, pt, prime, cache)[1]) % prime


def value_and_gradient_mod(p: Poly, pt: Sequence[int], prime: int,
                           cache: Optional[PointTables] = None) -> Tuple[int, List[int]]:
    """``p(pt)`` and ``grad p(pt)`` modulo ``prime`` (``pt`` entries nonzero mod prime).

    Uses ``x_i * d/dx_i (x^e) = e_i x^e``: the gradient is ``inv(x_i) * sum e_i c x^e``.
    """
    exps, vals, cache = _terms_mod(p, pt, prime, cache)
    if not exps:
        return 0, [0] * p.nvars
    acc = [sum(map(_imul, col, vals)) for col in zip(*exps)]
    return sum(vals) % prime, [a * b % prime for a, b in zip(acc, cache.inv)]


def identity_test_prob(a: Poly, b: Poly, prime: int = DEFAULT_PRIME, trials: int = 2,
                       rng: Optional[random.Random] = None) -> bool:
    """Schwartz-Zippel test of ``a == b`` at random points of (Z/prime)^N.

    ``False`` is always correct.  ``True`` is wrong with probability at most
    ``(deg / prime) ** trials`` when the reductions differ; when the
    reductions themselves coincide the test cannot see the difference.
    """
    _check_same(a, b)
    rng = rng or random.Random(0)
    for _ in range(trials):
        pt = [rng.randrange(prime) for _ in range(a.nvars)]
        if evaluate_mod(a, pt, prime) != evaluate_mod(b, pt, prime):
            return False
    return True
