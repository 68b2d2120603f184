"""Dense univariate polynomials over the rationals.

Coefficients are stored lowest degree first as :class:`fractions.Fraction`.
The zero polynomial has an empty coefficient tuple and degree ``-1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Iterable


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class UniPoly:
    __slots__ = ("coeffs", "var", "_hash")

    def __init__(self, coeffs: Iterable = (), var: str = "y"):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, var: str = "y") -> "UniPoly":
        return cls((), var)

    @classmethod
    def const(cls, c, var: str = "y") -> "UniPoly":
        return cls((c,), var)

    @classmethod
    def gen(cls, var: str = "y") -> "UniPoly":
        return cls((0, 1), var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "y") -> "UniPoly":
        return cls([0] * k + [c], var)

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs and (self.var == other.var or self.degree < 1)
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.coeffs, self.var if self.degree > 0 else None))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other, self.var)
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def _var_with(self, other: "UniPoly") -> str:
        return self.var if self.degree > 0 or other.degree <= 0 else other.var

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly((self[k] + o[k] for k in range(n)), self._var_with(o))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly((c * other for c in self.coeffs), self.var)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UniPoly.zero(self._var_with(o))
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self._var_with(o))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative exponent")
        result = UniPoly.const(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "UniPoly":
        return UniPoly((x * c for x in self.coeffs), self.var)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return UniPoly.zero(self.var), self
        quot = [Fraction(0)] * (dq + 1)
        inv = 1 / o.lc
        m = o.degree
        for k in range(dq, -1, -1):
            c = rem[k + m] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot, self.var), UniPoly(rem[:m], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UniPoly") -> bool:
        """True iff ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def pseudo_divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """``lc(other)^(deg self - deg other + 1) * self = q*other + r``."""
        o = self._coerce(other)
        delta = self.degree - o.degree
        if delta < 0:
            return UniPoly.zero(self.var), self
        return (self * o.lc ** (delta + 1)).divmod(o)

    # -- calculus -----------------------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly((k * c for k, c in enumerate(self.coeffs) if k), self.var)

    def integral(self) -> "UniPoly":
        """Antiderivative with zero constant term."""
        return UniPoly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.var)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element accepting rational scalars."""
        if not self.coeffs:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        acc = x * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, g: "UniPoly") -> "UniPoly":
        """``self(g)`` in the variable of ``g``."""
        acc = UniPoly.zero(g.var)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def rename(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    # -- normalisations -----------------------------------------------------
    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self.scale(1 / self.lc)

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` an integral primitive polynomial."""
        if not self.coeffs:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = igcd(num, c.numerator)
            den = den * c.denominator // igcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "UniPoly":
        """Integral primitive associate with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return self.scale(1 / c)

    def integer_coeffs(self) -> list[int]:
        return [int(c) for c in self.primitive().coeffs]

    def squarefree_part(self) -> "UniPoly":
        if self.is_zero():
            raise ValueError("squarefree part of the zero polynomial")
        g = poly_gcd(self, self.derivative())
        return self.exact_div(g).monic()

    # -- printing -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"UniPoly({self}, var={self.var!r})"

    def __str__(self) -> str:
        return format_terms(
            ((c, ((self.var, k),) if k else ()) for k, c in reversed(list(enumerate(self.coeffs))) if c)
        )


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(terms) -> str:
    """Render ``(coefficient, ((var, exp), ...))`` pairs in parser-compatible syntax."""
    parts: list[str] = []
    for c, powers in terms:
        c = _frac(c)
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in powers if e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a, b = f, g
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_lcm(f: UniPoly, g: UniPoly) -> UniPoly:
    if f.is_zero() or g.is_zero():
        return UniPoly.zero(f.var)
    return (f * g).exact_div(poly_gcd(f, g)).monic()


def coprime_part(f: UniPoly, g: UniPoly) -> UniPoly:
    """Largest divisor of ``f`` sharing no root with ``g``."""
    while True:
        c = poly_gcd(f, g)
        if c.degree < 1:
            return f
        f = f.exact_div(c)


def uni_resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Resultant over the field via the Euclidean remainder sequence."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    sign = 1
    res = Fraction(1)
    while True:
        m, k = f.degree, g.degree
        if k == 0:
            return sign * res * g.lc ** m
        r = f.divmod(g)[1]
        if r.is_zero():
            return Fraction(0)
        if m % 2 == 1 and k % 2 == 1:
            sign = -sign
        res *= g.lc ** (m - r.degree)
        f, g = g, r


def rational_roots(f: UniPoly, max_int: int = 10**10) -> list[Fraction] | None:
    """Sorted rational roots of ``f`` (without multiplicity).

    Uses the rational root theorem on the primitive integral associate.
    Returns ``None`` when a coefficient is too large to enumerate divisors.
    """
    if f.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    roots: list[Fraction] = []
    k = 0
    while not f[k]:
        k += 1
    if k:
        roots.append(Fraction(0))
        f = UniPoly(f.coeffs[k:], f.var)
    if f.degree < 1:
        return roots
    ints = f.integer_coeffs()
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > max_int or an > max_int:
        return None
    seen = set(roots)
    for q in _divisors(an):
        for p in _divisors(a0):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in seen and f(cand) == 0:
                    seen.add(cand)
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]

