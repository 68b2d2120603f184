"""Parser for derivations written as ``r*dy + p1*dz1 + p2*dz2``.

Grammar (``^`` binds tighter than unary minus, which binds tighter than ``*``/``/``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | 'x' | 'y' | 'z1' | 'z2' | 'dy' | 'dz1' | 'dz2' | '(' expr ')'

NUMBER is an integer or a decimal literal and is read exactly.  Division is
allowed only by expressions in ``x`` alone.  The value must be linear in
``dy, dz1, dz2`` with exactly one ``dy`` token; coefficients are checked for
twin-triangular shape (``r`` in x only, ``p_i`` free of ``z1, z2``) and for
regularity at ``x = 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .derivation import TwinDerivation
from .errors import NotLocalError, TwinPropError
from .local import LocalElement
from .multipoly import MultiPoly
from .unipoly import UniPoly

SYNTAX = "SYNTAX"
NON_TWIN = "NON_TWIN"
NON_LOCAL = "NON_LOCAL"

VARS = ("x", "y", "z1", "z2")
DIFFS = ("dy", "dz1", "dz2")
CONST = ""

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


class ParseError(TwinPropError):
    def __init__(self, code: str, message: str, text: str, pos: int):
        self.code, self.message, self.text, self.pos = code, message, text, pos
        caret = " " * pos + "^"
        super().__init__(f"{code} at column {pos + 1}: {message}\n  {text}\n  {caret}")


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(SYNTAX, f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


@dataclass
class _Coeff:
    """``num / den`` with ``num`` in (x, y, z1, z2) and ``den`` in x; ``origin`` maps a
    variable (or ``'/'``) to the first source position that introduced it."""

    num: MultiPoly
    den: UniPoly
    origin: dict[str, int] = field(default_factory=dict)

    @staticmethod
    def const(c) -> "_Coeff":
        return _Coeff(MultiPoly.const(c, VARS), UniPoly.const(1, "x"))

    def _merge(self, other: "_Coeff") -> dict[str, int]:
        out = dict(other.origin)
        for k, v in self.origin.items():
            out[k] = min(v, out.get(k, v))
        return out

    def __add__(self, other: "_Coeff") -> "_Coeff":
        if self.den == other.den:
            return _Coeff(self.num + other.num, self.den, self._merge(other))
        num = self.num * _xpoly(other.den) + other.num * _xpoly(self.den)
        return _Coeff(num, self.den * other.den, self._merge(other))

    def __neg__(self) -> "_Coeff":
        return _Coeff(-self.num, self.den, self.origin)

    def __mul__(self, other: "_Coeff") -> "_Coeff":
        return _Coeff(self.num * other.num, self.den * other.den, self._merge(other))

    def x_only(self) -> bool:
        return all(not any(e[1:]) for e in self.num.terms)


def _xpoly(u: UniPoly) -> MultiPoly:
    return MultiPoly.from_unipoly(u.rename("x"), VARS, "x")


class _Form(dict):
    """Linear form: key ``''`` for the plain part, ``dy``/``dz1``/``dz2`` otherwise."""

    def is_plain(self) -> bool:
        return all(k == CONST for k in self)

    def plain(self) -> _Coeff:
        return self.get(CONST) or _Coeff.const(0)


def _plain(c: _Coeff) -> _Form:
    return _Form({CONST: c})


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, pos: int | None = None, code: str = SYNTAX):
        raise ParseError(code, msg, self.text, self.tok.pos if pos is None else pos)

    def take(self, value: str | None = None) -> _Tok:
        t = self.tok
        if value is not None and t.value != value:
            self.error(f"expected {value!r}, found {t.value or 'end of input'!r}")
        self.i += 1
        return t

    def parse(self) -> _Form:
        if self.tok.kind == "end":
            self.error("empty expression")
        f = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.value!r}")
        return f

    def expr(self) -> _Form:
        f = self.term()
        while self.tok.value in ("+", "-"):
            op = self.take().value
            g = self.term()
            if op == "-":
                g = _Form({k: -v for k, v in g.items()})
            f = _Form(f)
            for k, v in g.items():
                f[k] = f[k] + v if k in f else v
        return f

    def term(self) -> _Form:
        f = self.unary()
        while self.tok.value in ("*", "/"):
            op = self.take()
            g = self.unary()
            if op.value == "*":
                f = self._mul(f, g, op.pos)
            else:
                f = self._div(f, g, op.pos)
        return f

    def _mul(self, f: _Form, g: _Form, pos: int) -> _Form:
        if not f.is_plain() and not g.is_plain():
            self.error("product of two differentials", pos)
        if not f.is_plain():
            f, g = g, f
        c = f.plain()
        return _Form({k: c * v for k, v in g.items()})

    def _div(self, f: _Form, g: _Form, pos: int) -> _Form:
        if not g.is_plain():
            self.error("division by a differential", pos)
        d = g.plain()
        if not d.x_only():
            self.error("division is only allowed by polynomials in x", pos)
        num = d.num.to_unipoly("x") if d.num.terms else UniPoly.zero("x")
        if num.is_zero():
            self.error("division by zero", pos)
        inv = _Coeff(_xpoly(d.den), num, dict(d.origin))
        inv.origin.setdefault("/", pos)
        inv.origin["/"] = min(inv.origin["/"], pos)
        return _Form({k: v * inv for k, v in f.items()})

    def unary(self) -> _Form:
        if self.tok.value == "-":
            self.take()
            return _Form({k: -v for k, v in self.unary().items()})
        if self.tok.value == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> _Form:
        base = self.atom()
        if self.tok.value != "^":
            return base
        caret = self.take()
        neg = False
        if self.tok.value == "-":
            neg = True
            self.take()
        t = self.tok
        if t.kind != "num" or not t.value.isdigit():
            self.error("exponent must be a non-negative integer literal")
        self.take()
        if neg:
            self.error("negative exponents are not supported; divide instead", caret.pos)
        if not base.is_plain():
            self.error("power of a differential", caret.pos)
        c = base.plain()
        k = int(t.value)
        return _plain(_Coeff(c.num**k, c.den**k, c.origin))

    def atom(self) -> _Form:
        t = self.tok
        if t.kind == "num":
            self.take()
            c = _Coeff.const(Fraction(t.value))
            c.origin = {"#": t.pos}
            return _plain(c)
        if t.kind == "name":
            self.take()
            if t.value in VARS:
                c = _Coeff(MultiPoly.gen(t.value, VARS), UniPoly.const(1, "x"), {t.value: t.pos})
                return _plain(c)
            if t.value in DIFFS:
                c = _Coeff.const(1)
                c.origin = {t.value: t.pos}
                return _Form({t.value: c})
            self.error(f"unknown symbol {t.value!r}", t.pos)
        if t.value == "(":
            self.take()
            f = self.expr()
            self.take(")")
            return f
        self.error(f"unexpected {t.value or 'end of input'!r}")


def _to_local_poly(c: _Coeff, text: str, what: str) -> MultiPoly:
    """Group a z-free coefficient by powers of y into local-ring elements."""
    groups: dict[int, dict[int, Fraction]] = {}
    for (ex, ey, _, _), v in c.num.terms.items():
        groups.setdefault(ey, {})[ex] = v
    out = {}
    for ey, xs in groups.items():
        num = UniPoly([xs.get(k, 0) for k in range(max(xs) + 1)], "x")
        try:
            out[(ey,)] = LocalElement(num, c.den)
        except NotLocalError:
            pos = c.origin.get("/", 0)
            raise ParseError(NON_LOCAL, f"{what} has a denominator vanishing at x = 0", text, pos) from None
    return MultiPoly(out, ("y",))


def _check_vars(c: _Coeff, forbidden: tuple[str, ...], text: str, what: str):
    idx = {v: VARS.index(v) for v in forbidden}
    for v, k in idx.items():
        if any(e[k] for e in c.num.terms):
            pos = c.origin.get(v, 0)
            raise ParseError(NON_TWIN, f"{what} depends on {v}", text, pos)


def _build(r: _Coeff, p1: _Coeff, p2: _Coeff, texts: tuple[str, str, str]) -> TwinDerivation:
    _check_vars(r, ("y", "z1", "z2"), texts[0], "the dy coefficient")
    _check_vars(p1, ("z1", "z2"), texts[1], "the dz1 coefficient")
    _check_vars(p2, ("z1", "z2"), texts[2], "the dz2 coefficient")
    rl = _to_local_poly(r, texts[0], "the dy coefficient")
    rv = rl.terms.get((0,), LocalElement(0))
    if not rv:
        raise ParseError(SYNTAX, "the dy coefficient is zero", texts[0], r.origin.get("dy", 0))
    return TwinDerivation(rv, _to_local_poly(p1, texts[1], "the dz1 coefficient"),
                          _to_local_poly(p2, texts[2], "the dz2 coefficient"))


def parse_derivation(text: str) -> TwinDerivation:
    """Parse ``r*dy + p1*dz1 + p2*dz2`` (terms in any order, ``dz`` terms optional)."""
    toks = _tokenize(text)
    dys = [t for t in toks if t.kind == "name" and t.value == "dy"]
    if len(dys) != 1:
        pos = dys[1].pos if len(dys) > 1 else 0
        raise ParseError(SYNTAX, f"expected exactly one dy term, found {len(dys)}", text, pos)
    form = _Parser(text).parse()
    if CONST in form and form[CONST].num.terms:
        c = form[CONST]
        pos = min(c.origin.values(), default=0)
        raise ParseError(SYNTAX, "every term must carry one of dy, dz1, dz2", text, pos)
    zero = _Coeff.const(0)
    r, p1, p2 = (form.get(k, zero) for k in DIFFS)
    return _build(r, p1, p2, (text, text, text))


def parse_coefficient(text: str) -> _Coeff:
    form = _Parser(text).parse()
    if not form.is_plain():
        d = next(k for k in form if k != CONST)
        raise ParseError(SYNTAX, f"coefficient may not contain {d}", text, form[d].origin.get(d, 0))
    return form.plain()


def parse_local_polynomial(text: str) -> MultiPoly:
    """A polynomial in ``y`` over the local ring, such as a group parameter value."""
    c = parse_coefficient(text)
    _check_vars(c, ("z1", "z2"), text, "the expression")
    return _to_local_poly(c, text, "the expression")


def parse_rational(text: str) -> Fraction:
    p = parse_local_polynomial(text)
    c = LocalElement.coerce(p.constant_value()) if p.is_constant() else None
    if c is None or not c.is_polynomial() or c.num.degree > 0:
        raise ParseError(SYNTAX, "expected a rational number", text, 0)
    return c.residue()


def parse_structured(data: dict) -> TwinDerivation:
    """Build a derivation from a mapping with string (or number) values ``r``, ``p1``, ``p2``."""
    missing = [k for k in ("r", "p1", "p2") if k not in data]
    extra = [k for k in data if k not in ("r", "p1", "p2")]
    if missing or extra:
        raise ParseError(SYNTAX, f"structured form needs keys r, p1, p2 (missing {missing}, unknown {extra})",
                         str(data), 0)
    texts = tuple(str(data[k]) for k in ("r", "p1", "p2"))
    return _build(*(parse_coefficient(t) for t in texts), texts)
