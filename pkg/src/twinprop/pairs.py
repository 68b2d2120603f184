"""The universal pair-of-roots algebra and x-adic lifting of its generic roots.

For a residue polynomial ``Pbar`` of degree ``d >= 2`` the ring

    B = Q[a, b] / (D),   D(a, b) = (Pbar(b) - Pbar(a)) / (b - a)

parametrizes ordered pairs of roots of ``Pbar(y) - t`` sharing the value
``t = Pbar(a)``.  Off the diagonal these are pairs of *distinct* roots; on the
diagonal ``D(a, a) = Pbar'(a)``, so any point with ``a = b`` lies over a
critical point.  Every statement "for all pairs of distinct roots over all
regular values" therefore becomes one ideal-theoretic statement in ``B``.

Denominators.  Newton lifting of the root ``a`` divides only by elements whose
reduction mod x is ``Pbar'(a)`` up to a rational constant, so lifts live in
``Q[a][1/Pbar'(a)]``; the lift of ``b`` is its image under ``a <-> b`` (``D`` is
symmetric) and lives in ``Q[b][1/Pbar'(b)]``.  Pair quantities are kept as
numerators over ``Pbar'(a)^i * Pbar'(b)^j``.  Clearing those denominators can
only add zeros where ``Pbar'(a) * Pbar'(b) = 0``.  At such a point of ``V(D)``
one of the two roots is critical, so the shared value ``t`` is a branch value:
exactly the locus the properness test discards.  Radical-membership tests of
the branch polynomial are therefore unaffected by clearing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .branch import branch_polynomial
from .errors import LiftingError
from .local import LocalElement, TruncSeries
from .multipoly import MultiPoly, divmod_monic
from .unipoly import UniPoly, poly_gcd

PAIR_VARS = ("a", "b")
HENSEL_VARS = ("t", "y", "x")


class CritFraction:
    """Element ``num / h^exp`` of ``Q[a][1/h]`` for a fixed polynomial ``h``.

    The numerator is kept free of factors ``h`` whenever ``exp > 0``, so the
    representation is canonical.
    """

    __slots__ = ("num", "exp", "h")

    def __init__(self, num: UniPoly, exp: int, h: UniPoly):
        if exp < 0:
            num = num * h ** (-exp)
            exp = 0
        while exp > 0 and num and h.divides(num):
            num = num.exact_div(h)
            exp -= 1
        if not num:
            exp = 0
        self.num, self.exp, self.h = num, exp, h

    def _lift(self, other) -> "CritFraction":
        if isinstance(other, CritFraction):
            return other
        return CritFraction(UniPoly.const(other, self.h.var), 0, self.h)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        return self.exp == o.exp and self.num == o.num

    def __hash__(self) -> int:
        return hash((self.num, self.exp))

    def __add__(self, other):
        o = self._lift(other)
        e = max(self.exp, o.exp)
        num = self.num * self.h ** (e - self.exp) + o.num * self.h ** (e - o.exp)
        return CritFraction(num, e, self.h)

    __radd__ = __add__

    def __neg__(self) -> "CritFraction":
        return CritFraction(-self.num, self.exp, self.h)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CritFraction(self.num.scale(other), self.exp, self.h)
        o = self._lift(other)
        return CritFraction(self.num * o.num, self.exp + o.exp, self.h)

    __rmul__ = __mul__

    def inverse(self) -> "CritFraction":
        """Inverse, defined when the numerator is a constant times a power of ``h``."""
        rest, j = self.num, 0
        while rest.degree > 0 and self.h.divides(rest):
            rest = rest.exact_div(self.h)
            j += 1
        if rest.degree != 0:
            raise LiftingError(f"{self.num} is not a unit of Q[{self.h.var}][1/({self.h})]")
        return CritFraction(UniPoly.const(1 / rest.lc, self.h.var), j - self.exp, self.h)

    def __repr__(self) -> str:
        return f"CritFraction(({self.num})/({self.h})^{self.exp})"


class PairAlgebra:
    """``B = Q[a, b]/(D)`` for a residue polynomial ``base`` of degree at least 2."""

    def __init__(self, base: UniPoly):
        base = base.rename("y")
        if base.degree < 2:
            raise ValueError(f"pair algebra needs degree >= 2, got {base.degree}")
        self.base = base
        self.d = base.degree
        self.lc = base.lc
        a, b = MultiPoly.gens(PAIR_VARS)
        D = MultiPoly.zero(PAIR_VARS)
        for k, c in enumerate(base.coeffs):
            for j in range(k):
                D = D + a**j * b ** (k - 1 - j) * c
        self.D = D
        self.crit_a = base.derivative().rename("a")
        self.t_of_a = base.rename("a")
        self._h_pows: dict[int, MultiPoly] = {}
        self._branch: UniPoly | None = None

    # -- embeddings -------------------------------------------------------------
    def embed(self, u: UniPoly, var: str = "a") -> MultiPoly:
        return MultiPoly.from_unipoly(u.rename(var), PAIR_VARS, var)

    def crit(self, var: str = "a") -> MultiPoly:
        return self.embed(self.crit_a, var)

    @property
    def branch(self) -> UniPoly:
        """Monic squarefree polynomial in ``t`` vanishing at the critical values."""
        if self._branch is None:
            self._branch = branch_polynomial(self.base)
        return self._branch

    def branch_at_a(self) -> MultiPoly:
        """The branch polynomial evaluated at ``t = Pbar(a)``."""
        return self.embed(self.branch.compose(self.t_of_a))

    # -- normal forms -------------------------------------------------------------
    def reduce(self, f: MultiPoly) -> MultiPoly:
        """Normal form: ``b``-degree below ``d - 1``, ``a`` free."""
        if f.vars != PAIR_VARS:
            f = f.with_vars(PAIR_VARS)
        return divmod_monic(f, self.D, "b")[1]

    def is_zero(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()

    def swap(self, f: MultiPoly) -> MultiPoly:
        """The involution ``a <-> b`` (well defined because ``D`` is symmetric)."""
        return MultiPoly({(e[1], e[0]): c for e, c in f.terms.items()}, PAIR_VARS)

    def coordinates(self, f: MultiPoly) -> list[UniPoly]:
        """Coordinates over ``Q[a]`` in the basis ``1, b, ..., b^(d-2)``."""
        f = self.reduce(f)
        out = [UniPoly.zero("a") for _ in range(self.d - 1)]
        for (ea, eb), c in f.terms.items():
            out[eb] = out[eb] + UniPoly.monomial(ea, c, "a")
        return out

    def from_coordinates(self, coords: list[UniPoly]) -> MultiPoly:
        b = MultiPoly.gen("b", PAIR_VARS)
        out = MultiPoly.zero(PAIR_VARS)
        for k, c in enumerate(coords):
            out = out + self.embed(c) * b**k
        return out

    def multiplication_matrix(self, u: MultiPoly) -> list[list[UniPoly]]:
        b = MultiPoly.gen("b", PAIR_VARS)
        cols = [self.coordinates(u * b**j) for j in range(self.d - 1)]
        n = self.d - 1
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self, u: MultiPoly) -> UniPoly:
        """Determinant of multiplication by ``u`` on the free ``Q[a]``-module ``B``."""
        return bareiss_det(self.multiplication_matrix(u))

    def invert(self, u: MultiPoly, h: UniPoly | None = None):
        """Quasi-inverse of ``u`` with denominator a power of ``h`` (default ``Pbar'(a)``).

        Returns ``(v, k)`` with ``u * v == h^k`` in ``B``, ``k`` minimal for the
        returned ``v``, or ``None`` when no power of ``h`` is a multiple of ``u``.
        """
        h = self.crit_a if h is None else h.rename("a")
        u = self.reduce(u)
        if u.is_zero():
            return None
        M = self.multiplication_matrix(u)
        N = bareiss_det(M)
        if N.is_zero():
            return None
        rest, k = N, 0
        while rest.degree > 0:
            g = poly_gcd(rest, h)
            if g.degree < 1:
                return None
            rest = rest.exact_div(g)
            k += 1
        n = self.d - 1
        coords = []
        for i in range(n):
            Mi = [[(UniPoly.const(1 if r == 0 else 0, "a") if c == i else M[r][c]) for c in range(n)]
                  for r in range(n)]
            coords.append(bareiss_det(Mi))
        w = (h**k).exact_div(N)
        coords = [c * w for c in coords]
        while k > 0 and all(h.divides(c) for c in coords):
            coords = [c.exact_div(h) for c in coords]
            k -= 1
        return self.from_coordinates(coords), k

    def h_power(self, k: int, var: str) -> MultiPoly:
        key = k if var == "a" else -k - 1
        if key not in self._h_pows:
            self._h_pows[key] = self.crit(var) ** k
        return self._h_pows[key]


def bareiss_det(M: list[list[UniPoly]]) -> UniPoly:
    """Fraction-free determinant over ``Q[a]``."""
    n = len(M)
    if n == 0:
        return UniPoly.const(1, "a")
    A = [row[:] for row in M]
    sign = 1
    prev = UniPoly.const(1, "a")
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return UniPoly.zero("a")
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


@dataclass(frozen=True)
class PairSeries:
    """Truncated x-series over ``B`` with a shared denominator ``Pbar'(a)^den_a * Pbar'(b)^den_b``."""

    coeffs: tuple[MultiPoly, ...]
    den_a: int
    den_b: int
    algebra: PairAlgebra

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def rescale(self, den_a: int, den_b: int) -> "PairSeries":
        if den_a < self.den_a or den_b < self.den_b:
            raise ValueError("can only raise denominator exponents")
        A = self.algebra
        f = A.h_power(den_a - self.den_a, "a") * A.h_power(den_b - self.den_b, "b")
        return PairSeries(tuple(A.reduce(c * f) for c in self.coeffs), den_a, den_b, A)

    def __sub__(self, other: "PairSeries") -> "PairSeries":
        ea, eb = max(self.den_a, other.den_a), max(self.den_b, other.den_b)
        s, o = self.rescale(ea, eb), other.rescale(ea, eb)
        n = min(s.precision, o.precision)
        return PairSeries(tuple(self.algebra.reduce(s.coeffs[k] - o.coeffs[k]) for k in range(n)),
                          ea, eb, self.algebra)

    def swap(self) -> "PairSeries":
        A = self.algebra
        return PairSeries(tuple(A.reduce(A.swap(c)) for c in self.coeffs), self.den_b, self.den_a, A)

    def leading_index(self) -> int | None:
        """Index of the first coefficient that is nonzero in ``B``."""
        for k, c in enumerate(self.coeffs):
            if not self.algebra.is_zero(c):
                return k
        return None

    @classmethod
    def from_crit_series(cls, s: TruncSeries, algebra: PairAlgebra, var: str = "a") -> "PairSeries":
        """Embed a series over ``Q[a][1/Pbar'(a)]`` with a common denominator."""
        E = max((c.exp for c in s.coeffs if isinstance(c, CritFraction)), default=0)
        out = []
        for c in s.coeffs:
            c = as_crit(c, algebra.crit_a)
            num = algebra.embed(c.num, var) * algebra.h_power(E - c.exp, var)
            out.append(algebra.reduce(num))
        if var == "a":
            return cls(tuple(out), E, 0, algebra)
        return cls(tuple(out), 0, E, algebra)


def as_crit(c, h: UniPoly) -> CritFraction:
    if isinstance(c, CritFraction):
        return c
    return CritFraction(UniPoly.const(c, h.var), 0, h)


# -- Hensel factorization -------------------------------------------------------

def residue_poly(P: MultiPoly) -> UniPoly:
    """Reduction mod x of a polynomial in ``y`` with local coefficients."""
    cs = {e[0]: c.residue() for e, c in P.terms.items()}
    return UniPoly([cs.get(k, 0) for k in range(max(cs, default=-1) + 1)], "y")


def truncate_local_poly(P: MultiPoly, n: int) -> MultiPoly:
    """``P mod x^n`` as a polynomial over Q in ``(t, y, x)``."""
    out = {}
    for (k,), c in P.terms.items():
        s = LocalElement.coerce(c).expand(n)
        for j, cj in enumerate(s.coeffs):
            if cj:
                out[(0, k, j)] = cj
    return MultiPoly(out, HENSEL_VARS)


def _x_coeff(f: MultiPoly, k: int) -> MultiPoly:
    return MultiPoly({(e[0], e[1], 0): c for e, c in f.terms.items() if e[2] == k}, HENSEL_VARS)


def _to_local(f: MultiPoly) -> MultiPoly:
    """Fold the ``x`` exponent into local coefficients: ``(t, y, x)`` over Q -> ``(t, y)`` over A."""
    out: dict = {}
    for (et, ey, ex), c in f.terms.items():
        term = LocalElement(UniPoly.monomial(ex, c, "x"))
        out[(et, ey)] = out[(et, ey)] + term if (et, ey) in out else term
    return MultiPoly(out, ("t", "y"))


@dataclass(frozen=True)
class HenselFactorization:
    """``P - t = S1*M + x^n*S2``.

    ``S1`` and ``M`` are polynomials over Q in ``(t, y, x)`` of x-degree below
    ``n``; ``M`` is monic of degree ``d`` in ``y``.  ``S2`` has local-ring
    coefficients in ``(t, y)`` so that the identity is exact even when ``P``
    has non-polynomial coefficients.
    """

    P: MultiPoly
    n: int
    S1: MultiPoly
    M: MultiPoly
    S2: MultiPoly
    residue: UniPoly

    @property
    def d(self) -> int:
        return self.residue.degree

    def identity_holds(self) -> bool:
        lhs = self.P.with_vars(("t", "y")) - MultiPoly.gen("t", ("t", "y"))
        xn = LocalElement.x_power(self.n)
        rhs = _to_local(self.S1) * _to_local(self.M) + self.S2 * xn
        return (lhs - rhs).is_zero()


def hensel_factorize(P: MultiPoly, n: int) -> HenselFactorization:
    """Factor ``P(y) - t`` modulo ``x^n`` with a monic degree-``d`` factor.

    ``P`` is a polynomial in ``('y',)`` with :class:`LocalElement` coefficients.
    The mod-x factors are the nonzero constant ``lc(Pbar)`` and
    ``(Pbar - t)/lc``, which are coprime, so the lift is unique.
    """
    if n < 1:
        raise ValueError("precision must be at least 1")
    Pbar = residue_poly(P)
    if Pbar.degree < 1:
        raise ValueError("residue polynomial is constant")
    lc = Pbar.lc
    t, y, x = MultiPoly.gens(HENSEL_VARS)
    F = truncate_local_poly(P, n) - t
    S1 = MultiPoly.const(lc, HENSEL_VARS)
    Mbar = (MultiPoly.from_unipoly(Pbar, HENSEL_VARS) - t) * (1 / lc)
    M = Mbar
    for k in range(1, n):
        E = _x_coeff(F - S1 * M, k)
        Q, R = divmod_monic(E, Mbar, "y")
        S1 = S1 + Q * x**k
        M = M + R * (x**k * (1 / lc))
    Pl = P.with_vars(("t", "y"))
    diff = Pl - MultiPoly.gen("t", ("t", "y")) - _to_local(S1) * _to_local(M)
    xn = LocalElement.x_power(n)
    S2 = MultiPoly({e: c / xn for e, c in diff.terms.items()}, ("t", "y"))
    return HenselFactorization(P, n, S1, M, S2, Pbar)


# -- Newton lifting of the generic root --------------------------------------------

def _poly_series_coeffs(M: MultiPoly, algebra: PairAlgebra, n: int) -> list[TruncSeries]:
    """Coefficients of ``M`` in ``y`` as x-series over ``Q[a]`` after ``t := Pbar(a)``."""
    h = algebra.crit_a
    deg = M.degree("y")
    rows: list[list] = [[Fraction(0)] * n for _ in range(deg + 1)]
    tpolys: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (et, ey, ex), c in M.terms.items():
        if ex < n:
            tpolys.setdefault((ey, ex), {})[et] = c
    for (ey, ex), tp in tpolys.items():
        u = UniPoly([tp.get(k, 0) for k in range(max(tp) + 1)], "t").compose(algebra.t_of_a)
        rows[ey][ex] = CritFraction(u, 0, h)
    return [TruncSeries(r, n) for r in rows]


def _horner(coeffs: list[TruncSeries], s: TruncSeries, prec: int) -> TruncSeries:
    acc = coeffs[-1].truncate(prec)
    for c in reversed(coeffs[:-1]):
        acc = acc * s + c.truncate(prec)
    return acc


def generic_root_series(H: HenselFactorization, algebra: PairAlgebra, n: int | None = None) -> TruncSeries:
    """Root ``sigma_a`` of ``M`` near ``a`` as a series over ``Q[a][1/Pbar'(a)]``.

    Newton iteration with precision doubling 1, 2, 4, ... then truncation to ``n``.
    """
    n = H.n if n is None else n
    if n > H.n:
        raise ValueError(f"factorization only valid mod x^{H.n}")
    h = algebra.crit_a
    Mc = _poly_series_coeffs(H.M, algebra, n)
    dMc = [c * (k + 1) for k, c in enumerate(Mc[1:])]
    a = CritFraction(UniPoly.gen("a"), 0, h)
    sigma = TruncSeries([a], 1)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        s = sigma.extend(prec)
        val = _horner(Mc, s, prec)
        der = _horner(dMc, s, prec)
        sigma = s - val * der.inverse(inv0=lambda c: as_crit(c, h).inverse())
    return sigma.truncate(n)


def lift_root_pair(H: HenselFactorization, algebra: PairAlgebra, n: int | None = None) -> tuple[PairSeries, PairSeries]:
    """Lifts ``(sigma_a, sigma_b)`` of the two generic roots, as :class:`PairSeries`."""
    if residue_poly(H.P) != algebra.base:
        raise ValueError("pair algebra and factorization come from different residue polynomials")
    s = generic_root_series(H, algebra, n)
    sa = PairSeries.from_crit_series(s, algebra, "a")
    return sa, sa.swap()


def eval_local_poly_series(P: MultiPoly, s: TruncSeries) -> TruncSeries:
    """``P(s)`` for ``P`` in ``('y',)`` over the local ring and ``s`` an x-series."""
    n = s.precision
    deg = P.degree("y")
    if deg < 0:
        return TruncSeries([], n)
    coeffs = [TruncSeries([], n)] * (deg + 1)
    for (k,), c in P.terms.items():
        coeffs[k] = LocalElement.coerce(c).expand(n)
    return _horner(coeffs, s, n)
