"""Independent reference computations used by the tests.

Nothing here calls into the package's algorithms: values are converted to
sympy expressions or plain dicts and recomputed by other means (Sylvester
determinants, linear algebra over Q, high precision complex numerics).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import mpmath
import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from twinprop.derivation import TwinDerivation, coaction, invariant
from twinprop.groebner import Ideal
from twinprop.local import LocalElement
from twinprop.multipoly import MultiPoly
from twinprop.pairs import PairSeries
from twinprop.unipoly import UniPoly

X, Y = sympy.symbols("x y")


# -- conversions -------------------------------------------------------------------

def q(c) -> sympy.Rational:
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def uni_expr(u: UniPoly, sym=None):
    sym = sympy.Symbol(u.var) if sym is None else sym
    return sum((q(c) * sym**k for k, c in enumerate(u.coeffs)), sympy.Integer(0))


def local_expr(c):
    c = LocalElement.coerce(c)
    return uni_expr(c.num, X) / uni_expr(c.den, X)


def multi_expr(f: MultiPoly):
    syms = [sympy.Symbol(v) for v in f.vars]
    out = sympy.Integer(0)
    for e, c in f.terms.items():
        coeff = local_expr(c) if isinstance(c, LocalElement) else q(c)
        out += coeff * sympy.Mul(*[s**k for s, k in zip(syms, e)])
    return out


def expr_to_multi(expr, vars) -> MultiPoly:
    """Polynomial sympy expression with rational coefficients -> MultiPoly."""
    syms = [sympy.Symbol(v) for v in vars]
    P = sympy.Poly(sympy.expand(expr), *syms)
    return MultiPoly({e: Fraction(int(c.p), int(c.q)) for e, c in P.terms()}, vars)


def expr_to_uni(expr, var: str) -> UniPoly:
    P = sympy.Poly(sympy.expand(expr), sympy.Symbol(var))
    return UniPoly([Fraction(int(c.p), int(c.q)) for c in reversed(P.all_coeffs())], var)


# -- exact arithmetic over Q(x) -----------------------------------------------------

FLOW_RING, FS, FS2, FY, FZ1, FZ2 = ring("s,s2,y,z1,z2", QQ.frac_field(X))


def to_flow_ring(f):
    """MultiPoly (or sympy expression) in s, y, z1, z2 with coefficients in Q(x)."""
    return FLOW_RING(multi_expr(f) if isinstance(f, MultiPoly) else f)


def derive_in_ring(D: TwinDerivation, f):
    r = FLOW_RING(local_expr(D.r))
    p1, p2 = to_flow_ring(D.p1.with_vars(("y",))), to_flow_ring(D.p2.with_vars(("y",)))
    return r * f.diff(FY) + p1 * f.diff(FZ1) + p2 * f.diff(FZ2)


# -- random inputs -----------------------------------------------------------------

def random_uni(rng: random.Random, deg: int, var: str = "y", lo: int = -5, hi: int = 5) -> UniPoly:
    return UniPoly([rng.randint(lo, hi) for _ in range(deg + 1)], var)


def random_local(rng: random.Random, unit: bool = False) -> LocalElement:
    num = UniPoly([rng.randint(-3, 3) for _ in range(3)], "x")
    if unit and num[0] == 0:
        num = num + UniPoly.const(rng.choice([1, -1, 2]), "x")
    den = UniPoly([rng.choice([1, 2, -1]), rng.randint(-2, 2)], "x")
    return LocalElement(num, den)


def random_derivation(rng: random.Random, n_max: int = 3, deg_max: int = 4,
                      n_min: int = 1, deg_min: int = 1) -> TwinDerivation:
    """A free derivation with ``1 <= n <= n_max`` and residues of degree in ``[deg_min, deg_max]``."""
    while True:
        n = rng.randint(n_min, n_max)
        u = random_local(rng, unit=True)
        r = LocalElement.x_power(n) * u
        ps = []
        for _ in range(2):
            deg = rng.randint(deg_min, deg_max)
            coeffs = [random_local(rng) for _ in range(deg + 1)]
            lead = rng.choice([1, -1, 2, 3, Fraction(1, 2)])
            coeffs[deg] = LocalElement(UniPoly([lead, rng.randint(-2, 2)], "x"))
            ps.append(MultiPoly({(k,): c for k, c in enumerate(coeffs)}, ("y",)))
        D = TwinDerivation(r, ps[0], ps[1])
        if all(P.degree >= 2 for P in D.Pbar) and _coprime(*D.pbar):
            return D


def _coprime(f: UniPoly, g: UniPoly) -> bool:
    return sympy.gcd(uni_expr(f, Y), uni_expr(g, Y)).is_number


# -- exact arithmetic oracles ---------------------------------------------------------

def sylvester_resultant(f, g, var: str):
    """Determinant of the Sylvester matrix of two sympy expressions."""
    v = sympy.Symbol(var)
    F = sympy.Poly(f, v).all_coeffs()
    G = sympy.Poly(g, v).all_coeffs()
    m, n = len(F) - 1, len(G) - 1
    if m == 0:
        return F[0] ** n
    if n == 0:
        return G[0] ** m
    size = m + n
    rows = []
    for k in range(n):
        rows.append([0] * k + F + [0] * (size - m - 1 - k))
    for k in range(m):
        rows.append([0] * k + G + [0] * (size - n - 1 - k))
    return sympy.expand(sympy.Matrix(rows).det(method="berkowitz"))


# -- ideal membership by linear algebra ---------------------------------------------------

def _monomials(nvars: int, max_deg: int):
    for total in range(max_deg + 1):
        for e in itertools.product(range(total + 1), repeat=nvars):
            if sum(e) == total:
                yield e


def _solve(columns: list[dict], target: dict) -> bool:
    """Whether ``target`` is a Q-linear combination of ``columns`` (dicts of monomial -> Fraction)."""
    rows = sorted({m for col in columns for m in col} | set(target))
    index = {m: k for k, m in enumerate(rows)}
    ncols = len(columns)
    A = [[Fraction(0)] * (ncols + 1) for _ in rows]
    for j, col in enumerate(columns):
        for m, c in col.items():
            A[index[m]][j] = Fraction(c)
    for m, c in target.items():
        A[index[m]][ncols] = Fraction(c)
    r = 0
    for j in range(ncols):
        piv = next((k for k in range(r, len(A)) if A[k][j] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][j]
        A[r] = [v * inv for v in A[r]]
        for k in range(len(A)):
            if k != r and A[k][j] != 0:
                f = A[k][j]
                A[k] = [a - f * b for a, b in zip(A[k], A[r])]
        r += 1
    return all(A[k][ncols] == 0 for k in range(r, len(A)))


def _mul_mono(f: dict, m: tuple) -> dict:
    return {tuple(a + b for a, b in zip(e, m)): c for e, c in f.items()}


def member_by_search(f: MultiPoly, gens: list[MultiPoly], max_cofactor_degree: int) -> bool:
    """Search for ``f = sum h_i g_i`` with ``deg h_i <= max_cofactor_degree``."""
    nv = len(f.vars)
    columns = [_mul_mono(g.terms, m) for g in gens for m in _monomials(nv, max_cofactor_degree)]
    return _solve(columns, dict(f.terms))


# -- division algorithm and the S-pair test --------------------------------------------------

def _grevlex(e):
    return (sum(e), tuple(-k for k in reversed(e)))


def _lex(e):
    return tuple(e)


ORDER_KEYS = {"grevlex": _grevlex, "lex": _lex}


def _lead(f: dict, key):
    m = max(f, key=key)
    return m, f[m]


def division_remainder(f: dict, G: list[dict], key) -> dict:
    f = {m: Fraction(c) for m, c in f.items() if c}
    rem: dict = {}
    leads = [_lead(g, key) for g in G]
    while f:
        m, c = _lead(f, key)
        for g, (gm, gc) in zip(G, leads):
            if all(a >= b for a, b in zip(m, gm)):
                shift = tuple(a - b for a, b in zip(m, gm))
                factor = c / Fraction(gc)
                for e, v in g.items():
                    e2 = tuple(a + b for a, b in zip(e, shift))
                    nv = f.get(e2, Fraction(0)) - factor * Fraction(v)
                    if nv:
                        f[e2] = nv
                    else:
                        f.pop(e2, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def s_pairs_reduce_to_zero(basis: list[MultiPoly], order: str = "grevlex") -> bool:
    key = ORDER_KEYS[order]
    G = [dict(g.terms) for g in basis]
    for f, g in itertools.combinations(G, 2):
        (fm, fc), (gm, gc) = _lead(f, key), _lead(g, key)
        lcm = tuple(max(a, b) for a, b in zip(fm, gm))
        s = {}
        for poly, lm, lc, sign in ((f, fm, fc, 1), (g, gm, gc, -1)):
            shift = tuple(a - b for a, b in zip(lcm, lm))
            for e, v in _mul_mono(poly, shift).items():
                s[e] = s.get(e, Fraction(0)) + sign * Fraction(v) / Fraction(lc)
        s = {e: v for e, v in s.items() if v}
        if division_remainder(s, G, key):
            return False
    return True


def sympy_reduced_basis(gens: list[MultiPoly], order: str = "grevlex") -> list[MultiPoly]:
    vars = gens[0].vars
    G = sympy.groebner([multi_expr(g) for g in gens], *[sympy.Symbol(v) for v in vars], order=order)
    out = []
    for g in G.exprs:
        p = expr_to_multi(g, vars)
        out.append(p.monic(order))
    return out


# -- numeric route for the single-value criterion ------------------------------------------------

def _taylor(expr, n: int) -> list:
    """First ``n`` Taylor coefficients at x = 0 of a rational function of x."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    num = sympy.Poly(num, X).all_coeffs()[::-1]
    den = sympy.Poly(den, X).all_coeffs()[::-1]
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(sympy.Rational(acc) / den[0])
    return out


def _series_mul(f, g, n):
    return [sum(f[i] * g[k - i] for i in range(k + 1)) for k in range(n)]


def _eval_series_poly(coeff_series, s, n):
    """``sum_k coeff_series[k] * s^k`` for x-series with mpmath entries."""
    acc = [mpmath.mpc(0)] * n
    for c in reversed(coeff_series):
        acc = _series_mul(acc, s, n)
        acc = [a + b for a, b in zip(acc, c)]
    return acc


def _integral_series(D: TwinDerivation, i: int, n: int):
    """Taylor data of ``P_i(y) = integral(p_i / u)`` computed directly from r and p_i."""
    r = sympy.cancel(local_expr(D.r))
    num = sympy.Poly(sympy.fraction(r)[0], X).all_coeffs()[::-1]
    nu = next(k for k, c in enumerate(num) if c != 0)
    u = sympy.cancel(r / X**nu)
    P = sympy.Poly(sympy.integrate(sympy.expand(multi_expr(D.p(i)) / u), Y), Y)
    deg = P.degree()
    coeffs = [P.coeff_monomial(Y**k) for k in range(deg + 1)]
    return nu, [[mpmath.mpf(sympy.Rational(c).p) / sympy.Rational(c).q for c in _taylor(ck, n)] for ck in coeffs]


def numeric_specialized(D: TwinDerivation, i: int, j: int, lam, min_pole: int = 1, dps: int = 60) -> str:
    """Decide the single-value condition with complex root lifting at high precision.

    Roots of ``Pbar_i(y) = lam`` are found numerically and lifted to x-series
    roots of ``P_i(y) = lam`` one coefficient at a time.  A pair of distinct
    roots is bad when ``P_j`` takes values agreeing in every coefficient
    ``x^0 .. x^(n - min_pole)``.
    """
    with mpmath.workdps(dps):
        n, _ = _integral_series(D, i, 1)
        _, Pi = _integral_series(D, i, n)
        _, Pj = _integral_series(D, j, n)
        lam = mpmath.mpf(Fraction(lam).numerator) / Fraction(lam).denominator
        base = [c[0] for c in Pi]
        base[0] -= lam
        roots = mpmath.polyroots(base[::-1], maxsteps=500, extraprec=4 * dps)
        dbase = [k * base[k] for k in range(1, len(base))]
        lifts = []
        for z in roots:
            s = [mpmath.mpc(z)] + [mpmath.mpc(0)] * (n - 1)
            slope = sum(c * z**k for k, c in enumerate(dbase))
            for k in range(1, n):
                val = _eval_series_poly(Pi, s, n)
                s[k] = -val[k] / slope
            lifts.append(_eval_series_poly(Pj, s, n))
        tol = mpmath.mpf(10) ** (-dps // 2)
        for a, b in itertools.permutations(range(len(lifts)), 2):
            diffs = [lifts[a][m] - lifts[b][m] for m in range(n - min_pole + 1)]
            scale = 1 + max(abs(lifts[a][m]) for m in range(n))
            if all(abs(d) < tol * scale for d in diffs):
                return "VIOLATED"
        return "SATISFIED"


# -- Hensel data ------------------------------------------------------------------------

A_SYM, B_SYM, T_SYM = sympy.symbols("a b t")


def hensel_identity_holds(H) -> bool:
    """``P - t == S1*M + x^n*S2`` as rational functions, checked by sympy."""
    lhs = multi_expr(H.P).subs(sympy.Symbol("y"), Y) - T_SYM
    rhs = multi_expr(H.S1) * multi_expr(H.M) + X**H.n * multi_expr(H.S2)
    return sympy.cancel(sympy.together(lhs - rhs)) == 0


def series_to_sympy(s: PairSeries):
    A = s.algebra
    den = uni_expr(A.crit_a, A_SYM) ** s.den_a * uni_expr(A.crit_a.rename("b"), B_SYM) ** s.den_b
    return sum(multi_expr(c) * X**k for k, c in enumerate(s.coeffs)) / den


def cleared_root_condition(H, A, sigma: PairSeries) -> bool:
    """``M(sigma)`` with ``t = Pbar(a)`` is zero modulo ``(x^n, D)`` after clearing denominators."""
    gens = (B_SYM, A_SYM, X)
    n = H.n
    Dab = sympy.Poly(multi_expr(A.D), *gens)

    def cut(p):
        p = p.rem(Dab)
        return sympy.Poly.from_dict({e: c for e, c in p.as_dict().items() if e[2] < n}, *gens, domain="QQ")

    den = sympy.Poly(uni_expr(A.crit_a, A_SYM) ** sigma.den_a * uni_expr(A.crit_a.rename("b"), B_SYM) ** sigma.den_b,
                     *gens, domain="QQ")
    num = cut(sympy.Poly(sum(multi_expr(c) * X**k for k, c in enumerate(sigma.coeffs)), *gens, domain="QQ"))
    M = multi_expr(H.M).subs(T_SYM, uni_expr(A.base, A_SYM))
    total = sympy.Poly(0, *gens, domain="QQ")
    num_pow = sympy.Poly(1, *gens, domain="QQ")
    for k in range(H.d + 1):
        coeff = sympy.Poly(M.coeff(Y, k), *gens, domain="QQ")
        total = cut(total + cut(coeff * num_pow) * den ** (H.d - k))
        num_pow = cut(num_pow * num)
    return total.is_zero


# -- flows ---------------------------------------------------------------------------------

def group_law_holds(D: TwinDerivation) -> bool:
    """Composing the images for parameters s2 and then s gives the images for s + s2."""
    imgs = {k: to_flow_ring(v) for k, v in coaction(D).items()}
    outer = [(FY, imgs["y"]), (FZ1, imgs["z1"]), (FZ2, imgs["z2"])]
    for name in ("y", "z1", "z2"):
        composed = imgs[name].compose(FS, FS2).compose(outer)
        if composed != imgs[name].compose(FS, FS + FS2):
            return False
    return True


def invariants_hold(D: TwinDerivation) -> bool:
    """Both forms of each invariant are killed by the derivation."""
    r = FLOW_RING(local_expr(D.r))
    for i, z in ((1, FZ1), (2, FZ2)):
        if derive_in_ring(D, to_flow_ring(invariant(D, i))):
            return False
        raw = -r * z + to_flow_ring(D.p(i).integrate("y"))
        if derive_in_ring(D, raw):
            return False
    return True


# -- random ideals -----------------------------------------------------------------------

VARS3 = ("u", "v", "w")


def random_poly(rng, vars, max_deg=3, terms=3, lo=-4, hi=4):
    out = {}
    for _ in range(terms):
        e = [0] * len(vars)
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(len(vars))] += 1
        out[tuple(e)] = rng.randint(lo, hi)
    return MultiPoly(out, vars)


def random_ideal(rng, nvars=None):
    vars = VARS3[: nvars or rng.randint(1, 3)]
    gens = []
    while len(gens) < rng.randint(1, 3):
        g = random_poly(rng, vars, terms=rng.randint(2, 4))
        if not g.is_zero():
            gens.append(g)
    return Ideal(gens, vars)
