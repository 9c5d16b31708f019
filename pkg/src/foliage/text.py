"""Text syntax for polynomials, differential forms and vector fields.

Grammar (EBNF, whitespace insignificant)::

    poly     = [sign] term { ("+" | "-") term } ;
    term     = factor { ("*" factor | "/" number) } ;
    factor   = number | var [ "^" int ] | "(" poly ")" [ "^" int ] ;
    number   = int [ "/" int ] ;
    var      = "x" int ;

    form     = "0" | [sign] fterm { ("+" | "-") fterm } ;
    fterm    = [ term "*" ] dx { "^" dx } | term ;
    dx       = "dx" int ;

    field    = "0" | [sign] vterm { ("+" | "-") vterm } ;
    vterm    = [ term "*" ] "d/dx" int ;

Implicit multiplication is rejected.  Canonical output prints terms in
descending graded-lex order; form and field terms are ``(poly)*dx0^dx2`` with
a leading ``-`` pulled out when the coefficient's leading term is negative.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .ratpoly import Poly

__all__ = [
    "ParseError",
    "parse_poly",
    "parse_form",
    "parse_vector_field",
    "format_poly",
    "format_form",
    "format_vector_field",
    "format_rational",
    "parse_rational",
]


class ParseError(ValueError):
    """Syntax error with a 1-based position and the set of expected tokens."""

    def __init__(self, message: str, text: str, pos: int, expected=()):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        self.expected = tuple(sorted(set(expected)))
        if len(self.expected) == 1:
            exp = f"; expected {self.expected[0]}"
        else:
            exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"line {line}, column {col}: {message}{exp}")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<DDX>d/dx\d+)
  | (?P<DX>dx\d+)
  | (?P<VAR>x\d+)
  | (?P<INT>\d+)
  | (?P<OP>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos,
                             ("variable", "integer", "operator", "differential"))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind if kind != "OP" else m.group(), m.group(), pos))
        pos = m.end()
    toks.append(_Tok("EOF", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, nvars: Optional[int]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.nvars = nvars
        self.max_index = -1
        # parsed polys are kept as dicts until nvars is known
        self.mode = "poly"

    # -- token helpers --------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, expected=()):
        t = self.tok
        raise ParseError(msg if t.kind != "EOF" else "unexpected end of input", self.text, t.pos, expected)

    def expect(self, kind, expected=None):
        if self.tok.kind != kind:
            self.error(f"unexpected {self.tok.text!r}", expected or (kind,))
        return self.advance()

    def index_of(self, tok: _Tok, prefix: str) -> int:
        idx = int(tok.text[len(prefix):])
        if self.nvars is not None and idx >= self.nvars:
            raise ParseError(f"unknown variable {tok.text!r} (only {self.nvars} variables)", self.text, tok.pos)
        self.max_index = max(self.max_index, idx)
        return idx

    # -- sparse dict arithmetic (exponents as sorted tuples of (var, k)) -----
    @staticmethod
    def _mul(a: Dict, b: Dict) -> Dict:
        out: Dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                m = dict(ea)
                for v, k in eb:
                    m[v] = m.get(v, 0) + k
                key = tuple(sorted(m.items()))
                out[key] = out.get(key, 0) + ca * cb
        return {k: c for k, c in out.items() if c}

    @staticmethod
    def _add(a: Dict, b: Dict, sign=1) -> Dict:
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + sign * c
        return {k: c for k, c in out.items() if c}

    # -- grammar --------------------------------------------------------
    def number(self) -> Fraction:
        t = self.expect("INT", ("integer",))
        val = Fraction(int(t.text))
        if self.tok.kind == "/" and self.toks[self.i + 1].kind == "INT":
            self.advance()
            d = self.advance()
            if int(d.text) == 0:
                raise ParseError("division by zero", self.text, d.pos)
            val /= int(d.text)
        return val

    def exponent(self) -> int:
        t = self.expect("INT", ("integer exponent",))
        return int(t.text)

    def factor(self) -> Dict:
        t = self.tok
        if t.kind == "INT":
            return {(): self.number()}
        if t.kind == "VAR":
            self.advance()
            idx = self.index_of(t, "x")
            k = 1
            if self.tok.kind == "^":
                self.advance()
                k = self.exponent()
            return {((idx, k),): Fraction(1)} if k else {(): Fraction(1)}
        if t.kind == "(":
            self.advance()
            inner = self.poly()
            self.expect(")", (")", "+", "-", "*"))
            if self.tok.kind == "^":
                self.advance()
                k = self.exponent()
                out = {(): Fraction(1)}
                for _ in range(k):
                    out = self._mul(out, inner)
                return out
            return inner
        self.error(f"unexpected {t.text!r}", ("integer", "variable", "("))

    def term(self, stop_at_differential=False) -> Tuple[Dict, bool]:
        """Parse a product; returns (value, ended_with_star_before_differential)."""
        val = self.factor()
        while True:
            k = self.tok.kind
            if k == "*":
                nxt = self.toks[self.i + 1].kind
                if stop_at_differential and nxt in ("DX", "DDX"):
                    self.advance()
                    return val, True
                self.advance()
                val = self._mul(val, self.factor())
            elif k == "/":
                self.advance()
                t = self.tok
                num = self.number()
                if num == 0:
                    raise ParseError("division by zero", self.text, t.pos)
                val = {e: c / num for e, c in val.items()}
            elif k in ("VAR", "INT", "(", "DX", "DDX"):
                self.error("implicit multiplication is not allowed", ("*", "+", "-"))
            else:
                return val, False

    def poly(self) -> Dict:
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        val, _ = self.term()
        val = {e: sign * c for e, c in val.items()}
        while self.tok.kind in ("+", "-"):
            s = 1 if self.advance().kind == "+" else -1
            t, _ = self.term()
            val = self._add(val, t, s)
        return val

    def differential_chain(self) -> Tuple[List[int], List[int]]:
        t = self.expect("DX", ("differential",))
        idx = [self.index_of(t, "dx")]
        pos = [t.pos]
        while self.tok.kind == "^":
            self.advance()
            t = self.expect("DX", ("differential",))
            idx.append(self.index_of(t, "dx"))
            pos.append(t.pos)
        return idx, pos

    def form_term(self):
        if self.tok.kind == "DX":
            return {(): Fraction(1)}, self.differential_chain()
        val, star = self.term(stop_at_differential=True)
        if star:
            return val, self.differential_chain()
        return val, ([], [])

    def form(self):
        terms = []
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        val, chain = self.form_term()
        terms.append(({e: sign * c for e, c in val.items()}, chain))
        while self.tok.kind in ("+", "-"):
            s = 1 if self.advance().kind == "+" else -1
            val, chain = self.form_term()
            terms.append(({e: s * c for e, c in val.items()}, chain))
        return terms

    def field_term(self):
        if self.tok.kind == "DDX":
            t = self.advance()
            return {(): Fraction(1)}, self.index_of(t, "d/dx")
        val, star = self.term(stop_at_differential=True)
        if not star or self.tok.kind != "DDX":
            self.error("expected a coordinate derivation", ("d/dx<i>",))
        t = self.advance()
        return val, self.index_of(t, "d/dx")

    def field(self):
        terms = []
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        val, idx = self.field_term()
        terms.append(({e: sign * c for e, c in val.items()}, idx))
        while self.tok.kind in ("+", "-"):
            s = 1 if self.advance().kind == "+" else -1
            val, idx = self.field_term()
            terms.append(({e: s * c for e, c in val.items()}, idx))
        return terms

    def finish(self):
        if self.tok.kind != "EOF":
            self.error(f"unexpected {self.tok.text!r}", ("+", "-", "end of input"))


def _to_poly(d: Dict, nvars: int) -> Poly:
    terms = {}
    for e, c in d.items():
        exp = [0] * nvars
        for v, k in e:
            exp[v] += k
        terms[tuple(exp)] = c
    return Poly(nvars, terms)


def _resolve_nvars(p: _Parser, nvars: Optional[int]) -> int:
    n = nvars if nvars is not None else p.max_index + 1
    return max(n, 1)


def parse_poly(text: str, nvars: Optional[int] = None) -> Poly:
    """Parse a polynomial; ``nvars`` defaults to one more than the largest index used."""
    p = _Parser(text, nvars)
    d = p.poly()
    p.finish()
    return _to_poly(d, _resolve_nvars(p, nvars))


def parse_form(text: str, nvars: Optional[int] = None, formdeg: Optional[int] = None):
    """Parse a differential form such as ``(x0)*dx1^dx0 + (x2^2)*dx0^dx1``."""
    from .exterior import PForm

    stripped = text.strip()
    if stripped == "0":
        if nvars is None or formdeg is None:
            raise ParseError("the zero form needs explicit nvars and formdeg", text, 0)
        return PForm.zero(nvars, formdeg)
    p = _Parser(text, nvars)
    terms = p.form()
    p.finish()
    n = _resolve_nvars(p, nvars)
    degs = {len(idx) for _, (idx, _) in terms}
    if len(degs) != 1:
        raise ParseError("terms of different form degrees", text, 0)
    q = degs.pop()
    if formdeg is not None and q != formdeg:
        raise ParseError(f"expected a {formdeg}-form, got a {q}-form", text, 0)
    comps: Dict[Tuple[int, ...], Poly] = {}
    for val, (idx, pos) in terms:
        if len(set(idx)) != len(idx):
            # repeated differential: the term is zero
            continue
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        sign = _perm_sign(order)
        key = tuple(idx[k] for k in order)
        poly = _to_poly(val, n)
        comps[key] = comps.get(key, Poly.zero(n)) + (poly if sign > 0 else -poly)
    return PForm(n, q, comps)


def parse_vector_field(text: str, nvars: Optional[int] = None):
    """Parse a vector field such as ``(x1^2)*d/dx0 - d/dx2``."""
    from .exterior import PVec

    p = _Parser(text, nvars)
    if text.strip() == "0":
        if nvars is None:
            raise ParseError("the zero field needs explicit nvars", text, 0)
        return PVec.zero(nvars)
    terms = p.field()
    p.finish()
    n = _resolve_nvars(p, nvars)
    comps = [Poly.zero(n) for _ in range(n)]
    for val, idx in terms:
        comps[idx] = comps[idx] + _to_poly(val, n)
    return PVec(comps)


def _perm_sign(order: List[int]) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def format_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        raise TypeError("floating-point input is not accepted; use 'p/q' text")
    try:
        return Fraction(str(s).strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {s!r}") from None


def _format_monomial(e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    terms = p.sorted_terms()
    if not terms:
        return "0"
    out = []
    for j, (e, c) in enumerate(terms):
        mono = _format_monomial(e)
        a = abs(Fraction(c))
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if j == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _signed_block(p: Poly) -> Tuple[bool, str]:
    negative = p.leading_coefficient() < 0
    return negative, format_poly(-p if negative else p)


def format_form(a) -> str:
    if not a.comps:
        return "0"
    out = []
    for j, key in enumerate(sorted(a.comps)):
        negative, body = _signed_block(a.comps[key])
        diff = "^".join(f"dx{i}" for i in key)
        text = f"({body})" + (f"*{diff}" if diff else "")
        if j == 0:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)


def format_vector_field(v) -> str:
    out = []
    for i, c in enumerate(v.comps):
        if c.is_zero():
            continue
        negative, body = _signed_block(c)
        text = f"({body})*d/dx{i}"
        if not out:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out) if out else "0"
