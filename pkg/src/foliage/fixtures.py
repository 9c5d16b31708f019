"""Concrete maps, foliations and points used by the verification suites.

The foliation ``acceptance_foliation(d)`` on P^2 is built so that in the
chart ``x2 = 1`` it has a singular point at the origin with linear part
``[[1, -1], [1, 1]]`` (eigenvalues ``1 +- i``: nondegenerate, hyperbolic,
nonzero trace).  The remaining terms are fixed small integers chosen so
that all singular points are isolated and ``rot`` of the homogeneous form
has an isolated zero at the origin.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from .exterior import PVec
from .foliation import Foliation1D
from .ratmap import RationalMap
from .text import parse_poly

_FIELDS = {
    2: (
        "x0*x2 - x1*x2 + x1^2 + 2*x0*x1",
        "x0*x2 + x1*x2 + 3*x0^2 - x1^2",
        "x0^2 + 2*x1^2 - x0*x1 + x1*x2 + 5*x0*x2",
    ),
    3: (
        "x0*x2^2 - x1*x2^2 + x1^3 + 2*x0*x1*x2",
        "x0*x2^2 + x1*x2^2 + 3*x0^3 - x1^2*x2",
        "x0^3 + 2*x1^3 - x0*x1^2 + x1^2*x2 + 5*x0^2*x2 + x0*x2^2",
    ),
}

#: the singular point of every acceptance foliation with a known linear part
SING_POINT: Tuple[int, int, int] = (0, 0, 1)
KUPKA_PARAMS: Tuple[Fraction, ...] = (Fraction(2), Fraction(3), Fraction(1, 2))


def acceptance_foliation(d: int) -> Foliation1D:
    if d not in _FIELDS:
        raise ValueError(f"no acceptance foliation of degree {d}")
    return Foliation1D(PVec([parse_poly(t, 3) for t in _FIELDS[d]]))


def diagonal_foliation() -> Foliation1D:
    """``X = diag(1, 2, 3) x``: degree 1 with the three coordinate points singular."""
    return Foliation1D(PVec([parse_poly(t, 3) for t in ("x0", "2*x1", "3*x2")]))


def binomial_map(nu: int, n: int = 3) -> RationalMap:
    """``(x1^nu - x0^nu, ..., xn^nu - x0^nu)`` from P^n to P^(n-1)."""
    return RationalMap([parse_poly(f"x{i}^{nu} - x0^{nu}", n + 1) for i in range(1, n + 1)])


def identity_map(nvars: int) -> RationalMap:
    return RationalMap([parse_poly(f"x{i}", nvars) for i in range(nvars)])


def kupka_fiber_points() -> List[Tuple[Fraction, ...]]:
    """Points ``[1:1:1:t]``; the binomial maps send them to ``[0:0:1]``."""
    return [(Fraction(1), Fraction(1), Fraction(1), t) for t in KUPKA_PARAMS]


PAIRS = [(nu, d) for nu in (2, 3) for d in (2, 3)]
