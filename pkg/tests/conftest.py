from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from foliage.exterior import PForm, PVec
from foliage.ratpoly import Poly

SYMS = sp.symbols("x0:6")


def to_sympy(p: Poly):
    x = SYMS[: p.nvars]
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * sp.Mul(*[xi ** k for xi, k in zip(x, e)])
                    for e, c in ((e, Fraction(c)) for e, c in p.items())])


def from_sympy(expr, nvars: int) -> Poly:
    x = SYMS[:nvars]
    P = sp.Poly(sp.expand(expr), *x)
    return Poly(nvars, {m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


coeffs = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-7, 7), st.integers(1, 4)),
)


@st.composite
def polys(draw, nvars=3, maxdeg=3, maxterms=5):
    n = draw(st.integers(0, maxterms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.lists(st.integers(0, maxdeg), min_size=nvars, max_size=nvars)))
        terms[e] = draw(coeffs)
    return Poly(nvars, terms)


@st.composite
def homogeneous_polys(draw, nvars=3, deg=2, maxterms=4):
    from itertools import combinations_with_replacement

    monos = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        monos.append(tuple(e))
    chosen = draw(st.lists(st.sampled_from(monos), max_size=maxterms, unique=True))
    return Poly(nvars, {e: draw(coeffs) for e in chosen})


@st.composite
def forms(draw, nvars=3, formdeg=1, maxdeg=2):
    from itertools import combinations

    keys = list(combinations(range(nvars), formdeg))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=3, unique=True)) if keys else []
    return PForm(nvars, formdeg, {k: draw(polys(nvars, maxdeg, 3)) for k in chosen})


@st.composite
def fields(draw, nvars=3, maxdeg=2):
    return PVec([draw(polys(nvars, maxdeg, 3)) for _ in range(nvars)])
