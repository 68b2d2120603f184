"""Sparse multivariate polynomials with duck-typed coefficients.

Coefficients are :class:`~fractions.Fraction` by default but any commutative
ring element supporting ``+ - *`` with rationals and ``bool()`` as a zero test
works (the derivation code stores :class:`twinprop.local.LocalElement` here).
Division-based routines (:meth:`MultiPoly.exact_div`, :func:`resultant`)
assume a field of fractions is available, i.e. rational coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .unipoly import UniPoly, format_terms

Exp = tuple[int, ...]


def lex_key(e: Exp):
    return e


def grlex_key(e: Exp):
    return (sum(e), e)


def grevlex_key(e: Exp):
    return (sum(e), tuple(-k for k in reversed(e)))


ORDERS: dict[str, Callable[[Exp], object]] = {
    "lex": lex_key,
    "grlex": grlex_key,
    "grevlex": grevlex_key,
}


def _is_scalar(c) -> bool:
    return not isinstance(c, MultiPoly)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[Exp, object] | None, vars: Iterable[str]):
        self.vars: tuple[str, ...] = tuple(vars)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            if c:
                clean[tuple(e)] = c
        self.terms: dict[Exp, object] = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, vars: Iterable[str]) -> "MultiPoly":
        return cls({}, vars)

    @classmethod
    def const(cls, c, vars: Iterable[str]) -> "MultiPoly":
        vars = tuple(vars)
        if isinstance(c, int):
            c = Fraction(c)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def gen(cls, var: str, vars: Iterable[str]) -> "MultiPoly":
        vars = tuple(vars)
        e = tuple(1 if v == var else 0 for v in vars)
        if sum(e) != 1:
            raise ValueError(f"{var!r} is not one of {vars}")
        return cls({e: Fraction(1)}, vars)

    @classmethod
    def gens(cls, vars: Iterable[str]) -> tuple["MultiPoly", ...]:
        vars = tuple(vars)
        return tuple(cls.gen(v, vars) for v in vars)

    @classmethod
    def from_unipoly(cls, u: UniPoly, vars: Iterable[str], var: str | None = None) -> "MultiPoly":
        vars = tuple(vars)
        var = var or u.var
        i = vars.index(var)
        terms = {}
        for k, c in enumerate(u.coeffs):
            if c:
                e = [0] * len(vars)
                e[i] = k
                terms[tuple(e)] = c
        return cls(terms, vars)

    def to_unipoly(self, var: str | None = None) -> UniPoly:
        """Convert a polynomial involving at most one variable."""
        used = [v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]
        if len(used) > 1 or (var is not None and used and used[0] != var):
            raise ValueError(f"{self} is not univariate in {var or used}")
        var = var or (used[0] if used else (self.vars[0] if self.vars else "y"))
        if not self.terms:
            return UniPoly.zero(var)
        i = self.vars.index(var) if var in self.vars else None
        deg = max(e[i] for e in self.terms) if i is not None else 0
        cs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            cs[e[i] if i is not None else 0] = c
        return UniPoly(cs, var)

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self, var: str) -> int:
        """Degree in ``var``; ``-1`` for the zero polynomial."""
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def leading_term(self, order: str = "grevlex") -> tuple[Exp, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=ORDERS[order])
        return e, self.terms[e]

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            if self.vars != other.vars:
                try:
                    other = other.with_vars(self.vars)
                except ValueError:
                    return False
            return self.terms == other.terms
        if _is_scalar(other):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        return MultiPoly.const(other, self.vars)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            if isinstance(other, int):
                other = Fraction(other)
            return MultiPoly({e: c * other for e, c in self.terms.items()}, self.vars)
        o = self._coerce(other)
        out: dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return MultiPoly(out, self.vars)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: Exp, c=Fraction(1)) -> "MultiPoly":
        return MultiPoly(
            {tuple(a + b for a, b in zip(e, m)): v * c for e, v in self.terms.items()}, self.vars
        )

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly({e: fn(c) for e, c in self.terms.items()}, self.vars)

    # -- calculus -----------------------------------------------------------
    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(out, self.vars)

    def integrate(self, var: str) -> "MultiPoly":
        """Antiderivative in ``var`` with no terms free of ``var`` added."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += 1
            out[tuple(ne)] = c * Fraction(1, ne[i])
        return MultiPoly(out, self.vars)

    # -- variable management ------------------------------------------------
    def with_vars(self, new_vars: Iterable[str]) -> "MultiPoly":
        """Re-embed into another variable list; dropped variables must not occur."""
        new_vars = tuple(new_vars)
        idx = []
        for i, v in enumerate(self.vars):
            if v in new_vars:
                idx.append((i, new_vars.index(v)))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v!r} occurs in {self}")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, j in idx:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly(out, new_vars)

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Coefficients as polynomials in the remaining variables (same variable list)."""
        i = self.vars.index(var)
        groups: dict[int, dict[Exp, object]] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            groups.setdefault(k, {})[tuple(ne)] = c
        return {k: MultiPoly(t, self.vars) for k, t in groups.items()}

    @classmethod
    def from_coeffs_in(cls, var: str, coeffs: Mapping[int, "MultiPoly"], vars) -> "MultiPoly":
        y = cls.gen(var, vars)
        out = cls.zero(vars)
        for k, c in coeffs.items():
            out = out + c * y**k
        return out

    # -- substitution -------------------------------------------------------
    def subs(self, images: Mapping[str, object], target_vars: Iterable[str] | None = None):
        """Substitute ``images[v]`` for each listed variable.

        Unlisted variables are kept (they must exist in ``target_vars``).
        Images may be MultiPolys over ``target_vars`` or scalars.
        """
        target = tuple(target_vars) if target_vars is not None else self.vars
        imgs = []
        for v in self.vars:
            if v in images:
                img = images[v]
                if isinstance(img, MultiPoly) and img.vars != target:
                    img = img.with_vars(target)
                imgs.append(img)
            else:
                imgs.append(MultiPoly.gen(v, target))
        cache: dict[tuple[int, int], object] = {}

        def power(i: int, k: int):
            if (i, k) not in cache:
                cache[(i, k)] = imgs[i] ** k if isinstance(imgs[i], MultiPoly) else _spow(imgs[i], k)
            return cache[(i, k)]

        out = MultiPoly.zero(target)
        for e, c in self.terms.items():
            term = MultiPoly.const(c, target) if not isinstance(c, MultiPoly) else c
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a full assignment of scalars."""
        total = None
        for e, c in self.terms.items():
            val = c
            for v, k in zip(self.vars, e):
                if k:
                    val = val * _spow(point[v], k)
            total = val if total is None else total + val
        return Fraction(0) if total is None else total

    # -- exact division over Q ----------------------------------------------
    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        o = self._coerce(other)
        if not o.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = o.leading_term("lex")
        rem = self
        quot: dict[Exp, object] = {}
        while rem.terms:
            e, c = rem.leading_term("lex")
            if any(a < b for a, b in zip(e, lm)):
                raise ArithmeticError(f"inexact division of {self} by {other}")
            m = tuple(a - b for a, b in zip(e, lm))
            q = c / lc
            quot[m] = q
            rem = rem - o.mul_monomial(m, q)
        return MultiPoly(quot, self.vars)

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        from math import gcd

        num, den = 0, 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self, order: str = "grevlex") -> "MultiPoly":
        """Integral primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term(order)[1] < 0:
            c = -c
        return self * (1 / c)

    def monic(self, order: str = "grevlex") -> "MultiPoly":
        if not self.terms:
            return self
        return self * (1 / self.leading_term(order)[1])

    # -- printing -----------------------------------------------------------
    def sorted_terms(self, order: str = "grlex"):
        return sorted(self.terms.items(), key=lambda t: ORDERS[order](t[0]), reverse=True)

    def __str__(self) -> str:
        if self.terms and not all(isinstance(c, (int, Fraction)) for c in self.terms.values()):
            parts = []
            for e, c in self.sorted_terms():
                mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
                parts.append(f"({c})" + (f"*{mono}" if mono else ""))
            return " + ".join(parts)
        return format_terms((c, tuple(zip(self.vars, e))) for e, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"MultiPoly({self}, vars={self.vars})"


def _spow(x, k: int):
    r = None
    for _ in range(k):
        r = x if r is None else r * x
    return r if r is not None else Fraction(1)


# -- resultants ---------------------------------------------------------------

def _as_coeff_list(f: MultiPoly, var: str) -> list[MultiPoly]:
    cs = f.coeffs_in(var)
    deg = max(cs, default=-1)
    zero = MultiPoly.zero(f.vars)
    return [cs.get(k, zero) for k in range(deg + 1)]


def _trim(cs: list[MultiPoly]) -> list[MultiPoly]:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _prem(A: list[MultiPoly], B: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder of coefficient lists: lc(B)^(dA-dB+1)*A mod B."""
    dB = len(B) - 1
    lcB = B[-1]
    R = list(A)
    e = len(A) - len(B) + 1
    while len(R) - 1 >= dB and R:
        lcR = R[-1]
        shift = len(R) - 1 - dB
        R = [r * lcB for r in R]
        for j, b in enumerate(B):
            R[shift + j] = R[shift + j] - lcR * b
        R.pop()
        _trim(R)
        e -= 1
    if e > 0:
        f = lcB**e
        R = [r * f for r in R]
    return R


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Resultant in ``var`` by the subresultant pseudo-remainder sequence.

    The result lives in the same variable list with ``var`` absent.
    Conventions match the Sylvester determinant: ``Res(f, g) = lc(f)^deg g * prod g(roots of f)``.
    """
    if f.vars != g.vars:
        raise ValueError("resultant operands must share a variable list")
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    vars = f.vars
    A, B = _as_coeff_list(f, var), _as_coeff_list(g, var)
    if not A or not B:
        return MultiPoly.zero(vars)
    one = MultiPoly.const(1, vars)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
    if len(B) == 1:
        return B[0] ** (len(A) - 1) * s
    g_, h = one, one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem(A, B)
        if not R:
            return MultiPoly.zero(vars)
        divisor = g_ * h**delta
        A, B = B, [r.exact_div(divisor) for r in R]
        g_ = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = (g_**delta).exact_div(h ** (delta - 1))
        if len(B) == 1:
            break
    dA = len(A) - 1
    if dA == 0:
        return MultiPoly.const(s, vars)
    h = (B[0] ** dA).exact_div(h ** (dA - 1)) if dA > 1 else B[0] ** dA
    return h * s


def divmod_monic(f: MultiPoly, g: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly]:
    """Divide by ``g`` whose leading coefficient in ``var`` is a nonzero scalar.

    Returns ``(q, r)`` with ``f = q*g + r`` and ``deg_var r < deg_var g``.
    """
    gc = _as_coeff_list(g, var)
    if not gc:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = gc[-1]
    if not lead.is_constant():
        raise ValueError(f"leading coefficient of {g} in {var} is not a scalar")
    inv = 1 / lead.constant_value()
    dg = len(gc) - 1
    rc = _as_coeff_list(f, var)
    zero = MultiPoly.zero(f.vars)
    qc = [zero] * max(len(rc) - dg, 0)
    for k in range(len(rc) - 1, dg - 1, -1):
        c = rc[k]
        if c.is_zero():
            continue
        c = c * inv
        qc[k - dg] = c
        for j, b in enumerate(gc):
            rc[k - dg + j] = rc[k - dg + j] - c * b
    y = MultiPoly.gen(var, f.vars)
    q = sum((c * y**k for k, c in enumerate(qc) if c), zero)
    r = sum((c * y**k for k, c in enumerate(rc[:dg]) if c), zero)
    return q, r
