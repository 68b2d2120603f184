"""The discrete valuation ring Q[x] localized at (x).

Elements are reduced fractions ``num/den`` of polynomials in ``x`` with
``den(0) != 0``; the denominator is scaled so that ``den(0) == 1``, which makes
the representation canonical and equality structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .errors import NotLocalError
from .unipoly import UniPoly, poly_gcd

INF = float("inf")

X = "x"


class LocalElement:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num, X)
        if den is None:
            den = UniPoly.const(1, X)
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(den, X)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = num.rename(X), den.rename(X)
        if num.is_zero():
            den = UniPoly.const(1, X)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        if den[0] == 0:
            raise NotLocalError(f"denominator {den} vanishes at x = 0")
        c = den[0]
        self.num = num.scale(1 / c)
        self.den = den.scale(1 / c)

    @classmethod
    def x_power(cls, k: int) -> "LocalElement":
        return cls(UniPoly.monomial(k, 1, X))

    @classmethod
    def coerce(cls, v) -> "LocalElement":
        if isinstance(v, LocalElement):
            return v
        if isinstance(v, (int, Fraction)):
            return cls(v)
        if isinstance(v, UniPoly):
            return cls(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to LocalElement")

    # -- ring structure -------------------------------------------------------
    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        try:
            o = LocalElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num.coeffs, self.den.coeffs))

    def __add__(self, other):
        try:
            o = LocalElement.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return LocalElement(self.num + o.num, self.den)
        return LocalElement(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "LocalElement":
        return LocalElement(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = LocalElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LocalElement(self.num.scale(other), self.den)
        try:
            o = LocalElement.coerce(other)
        except TypeError:
            return NotImplemented
        return LocalElement(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division, valid whenever the quotient stays in the local ring."""
        if isinstance(other, (int, Fraction)):
            return LocalElement(self.num.scale(Fraction(1) / other), self.den)
        o = LocalElement.coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero in the local ring")
        return LocalElement(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return LocalElement.coerce(other) / self

    def __pow__(self, k: int) -> "LocalElement":
        return LocalElement(self.num**k, self.den**k)

    # -- valuation ------------------------------------------------------------
    def valuation(self):
        """Largest ``k`` with ``x^k`` dividing the element; ``inf`` for zero."""
        if not self:
            return INF
        k = 0
        while self.num[k] == 0:
            k += 1
        return k

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def unit_factor(self) -> tuple[int, "LocalElement"]:
        """Return ``(n, u)`` with ``self == x^n * u`` and ``u`` a unit."""
        if not self:
            raise ValueError("unit factor of zero")
        n = self.valuation()
        return n, LocalElement(UniPoly(self.num.coeffs[n:], X), self.den)

    def residue(self) -> Fraction:
        """Image in the residue field Q (value at x = 0)."""
        return self.num[0] / self.den[0]

    def expand(self, N: int) -> "TruncSeries":
        """Power-series expansion truncated below ``x^N``."""
        out = [Fraction(0)] * N
        num = [self.num[k] for k in range(N)]
        d0 = self.den[0]
        for k in range(N):
            acc = num[k]
            for j in range(1, min(k, self.den.degree) + 1):
                acc -= self.den[j] * out[k - j]
            out[k] = acc / d0
        return TruncSeries(out, N)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __repr__(self) -> str:
        return f"LocalElement({self})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


class TruncSeries:
    """Power series modulo ``x^N`` over a duck-typed coefficient ring."""

    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs: Sequence, precision: int):
        cs = list(coeffs)[:precision]
        zero = Fraction(0)
        cs += [zero] * (precision - len(cs))
        self.coeffs = cs
        self.precision = precision

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.precision

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.precision, other.precision)
        return all(self.coeffs[k] == other.coeffs[k] for k in range(n))

    def _prec(self, other) -> int:
        return min(self.precision, other.precision) if isinstance(other, TruncSeries) else self.precision

    def __add__(self, other):
        n = self._prec(other)
        if isinstance(other, TruncSeries):
            return TruncSeries([self.coeffs[k] + other.coeffs[k] for k in range(n)], n)
        return TruncSeries([self.coeffs[0] + other] + self.coeffs[1:], n)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.precision)
        n = self._prec(other)
        out = []
        for k in range(n):
            acc = None
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if not a or not b:
                    continue
                p = a * b
                acc = p if acc is None else acc + p
            out.append(Fraction(0) if acc is None else acc)
        return TruncSeries(out, n)

    __rmul__ = __mul__

    def truncate(self, N: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[:N], min(N, self.precision))

    def extend(self, N: int) -> "TruncSeries":
        """Pad with zero coefficients up to precision ``N`` (the caller vouches for them)."""
        return TruncSeries(self.coeffs, N)

    def inverse(self, inv0: Callable | None = None) -> "TruncSeries":
        """Multiplicative inverse; ``inv0`` inverts the constant coefficient."""
        c0 = self.coeffs[0]
        w0 = inv0(c0) if inv0 is not None else 1 / c0
        out = [w0]
        for k in range(1, self.precision):
            acc = None
            for j in range(1, k + 1):
                a = self.coeffs[j]
                if not a:
                    continue
                p = a * out[k - j]
                acc = p if acc is None else acc + p
            out.append(Fraction(0) if acc is None else -(acc * w0))
        return TruncSeries(out, self.precision)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return INF

    def map(self, fn) -> "TruncSeries":
        return TruncSeries([fn(c) for c in self.coeffs], self.precision)

    def to_unipoly(self) -> UniPoly:
        return UniPoly(self.coeffs, X)

    def __repr__(self) -> str:
        return f"TruncSeries({self.coeffs}, precision={self.precision})"

