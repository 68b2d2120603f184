"""Twin-triangular derivations ``r*d/dy + p1(y)*d/dz1 + p2(y)*d/dz2`` over ``Q[x]_(x)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .branch import branch_polynomial, preimage_polynomial
from .local import LocalElement
from .multipoly import MultiPoly
from .pairs import residue_poly
from .unipoly import UniPoly, format_terms, poly_gcd

Y_VARS = ("y",)
SPACE_VARS = ("y", "z1", "z2")
COACTION_VARS = ("s", "y", "z1", "z2")


def as_local_poly(p) -> MultiPoly:
    """Coerce ``p`` into a polynomial in ``('y',)`` with local-ring coefficients."""
    if isinstance(p, MultiPoly):
        if p.vars != Y_VARS:
            p = p.with_vars(Y_VARS)
        return p.map_coeffs(LocalElement.coerce)
    if isinstance(p, UniPoly):
        return MultiPoly.from_unipoly(p.rename("y"), Y_VARS).map_coeffs(LocalElement.coerce)
    return MultiPoly.const(LocalElement.coerce(p), Y_VARS)


def _integrate_y(p: MultiPoly) -> MultiPoly:
    return MultiPoly({(k + 1,): c / (k + 1) for (k,), c in p.terms.items()}, Y_VARS)


def _derive_y(p: MultiPoly) -> MultiPoly:
    return MultiPoly({(k - 1,): c * k for (k,), c in p.terms.items() if k}, Y_VARS)


def format_local_multi(p: MultiPoly) -> str:
    """Render a polynomial over ``Q[x]_(x)`` in parser syntax.

    Polynomial coefficients are expanded into ``x`` monomials; genuine
    fractions are printed as ``(num)/(den)*monomial``.
    """
    poly_terms = []
    fractions = []
    for e, c in sorted(p.terms.items(), reverse=True):
        powers = tuple(zip(p.vars, e))
        c = LocalElement.coerce(c)
        if c.is_polynomial():
            for j in range(c.num.degree, -1, -1):
                if c.num[j]:
                    poly_terms.append((c.num[j], (("x", j),) + powers))
        else:
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in powers if k)
            fractions.append(f"({c.num})/({c.den})" + (f"*{mono}" if mono else ""))
    poly_terms.sort(key=lambda t: (-sum(k for _, k in t[1]), [-k for _, k in t[1][1:]]))
    parts = ([format_terms(poly_terms)] if poly_terms else []) + fractions
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class BranchData:
    residue_integral: UniPoly
    alpha: UniPoly
    preimage: UniPoly
    degree: int


class TwinDerivation:
    """``r*d/dy + p1(y)*d/dz1 + p2(y)*d/dz2`` with ``r`` in the local ring.

    Derived data: ``n`` and the unit ``u`` with ``r = x^n * u``; normalized
    coefficients ``pt[i] = p[i]/u``, their integrals ``P[i]`` (zero constant
    term) and the residues mod x of both.
    """

    __slots__ = ("r", "p1", "p2", "n", "u", "pt", "P", "pbar", "Pbar")

    def __init__(self, r, p1, p2):
        r = LocalElement.coerce(r)
        if not r:
            raise ValueError("the y-coefficient r must be nonzero")
        self.r = r
        self.p1 = as_local_poly(p1)
        self.p2 = as_local_poly(p2)
        self.n, self.u = r.unit_factor()
        self.pt = tuple(p.map_coeffs(lambda c: c / self.u) for p in (self.p1, self.p2))
        self.P = tuple(_integrate_y(p) for p in self.pt)
        self.pbar = tuple(residue_poly(p) for p in self.pt)
        self.Pbar = tuple(residue_poly(P) for P in self.P)

    def p(self, i: int) -> MultiPoly:
        return (self.p1, self.p2)[i - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwinDerivation):
            return NotImplemented
        return self.r == other.r and self.p1 == other.p1 and self.p2 == other.p2

    def __hash__(self) -> int:
        return hash((self.r, self.p1, self.p2))

    def __repr__(self) -> str:
        return f"TwinDerivation({self})"

    def __str__(self) -> str:
        return f"({self.r})*dy + ({format_local_multi(self.p1)})*dz1 + ({format_local_multi(self.p2)})*dz2"

    def degrees(self) -> tuple[int, int]:
        return self.Pbar[0].degree, self.Pbar[1].degree


def check_free(D: TwinDerivation) -> bool:
    """Free iff ``x^n``, ``p1``, ``p2`` generate the unit ideal."""
    if D.n == 0:
        return True
    return poly_gcd(*D.pbar).degree == 0


def apply_derivation(D: TwinDerivation, f: MultiPoly) -> MultiPoly:
    """``D(f)`` for ``f`` a polynomial in ``(y, z1, z2)`` over the local ring."""
    f = f.with_vars(SPACE_VARS)
    out = f.derivative("y") * D.r
    for var, p in (("z1", D.p1), ("z2", D.p2)):
        out = out + f.derivative(var) * p.with_vars(SPACE_VARS)
    return out


def coaction(D: TwinDerivation) -> dict[str, MultiPoly]:
    """Images of ``y, z1, z2`` under ``exp(s*D)`` as polynomials in ``(s, y, z1, z2)``.

    ``z_i`` maps to ``z_i + (Q_i(y + s*r) - Q_i(y))/r`` with ``Q_i`` an integral
    of ``p_i``; the quotient is expanded as ``sum_k Q_i^(k)(y) s^k r^(k-1)/k!``.
    """
    s, y, z1, z2 = MultiPoly.gens(COACTION_VARS)
    images = {"y": y + s * D.r}
    for name, zi, p in (("z1", z1, D.p1), ("z2", z2, D.p2)):
        Q = _integrate_y(p)
        img = zi
        deriv = Q
        k = 0
        while True:
            k += 1
            deriv = _derive_y(deriv)
            if deriv.is_zero():
                break
            coeff = D.r ** (k - 1) * Fraction(1, factorial(k))
            img = img + deriv.with_vars(COACTION_VARS) * s**k * coeff
        images[name] = img
    return images


def invariant(D: TwinDerivation, i: int) -> MultiPoly:
    """The invariant ``-x^n*z_i + P_i(y)``; ``-r*z_i + integral(p_i)`` is ``u`` times it."""
    if D.n == 0:
        raise ValueError("r is a unit: use the slice y/r instead of an invariant")
    z = MultiPoly.gen(f"z{i}", SPACE_VARS)
    return z * (-LocalElement.x_power(D.n)) + D.P[i - 1].with_vars(SPACE_VARS)


def branch_data(D: TwinDerivation, i: int) -> BranchData:
    p = D.pbar[i - 1]
    if p.is_zero():
        raise ValueError(f"residue of p{i} is zero: normalize first")
    P = D.Pbar[i - 1]
    return BranchData(P, branch_polynomial(P), preimage_polynomial(P), P.degree)
