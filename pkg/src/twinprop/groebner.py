"""Buchberger's algorithm over Q, with membership and elimination queries.

Internally every polynomial is a primitive integer polynomial stored as a
``{exponent: int}`` dict, and content is removed after each reduction.  Pairs
are chosen by the normal strategy and pruned with the Gebauer-Moeller update,
which applies both of Buchberger's criteria.  Results are returned as monic
:class:`MultiPoly` objects over :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .multipoly import ORDERS, MultiPoly
from .unipoly import UniPoly

DEFAULT_MAX_BASIS_SIZE = 2000
DEFAULT_MAX_DEGREE = 400

Exp = tuple[int, ...]
IntPoly = dict[Exp, int]


@dataclass(frozen=True)
class Limits:
    max_basis_size: int = DEFAULT_MAX_BASIS_SIZE
    max_degree: int = DEFAULT_MAX_DEGREE


@dataclass(frozen=True)
class Ideal:
    generators: tuple[MultiPoly, ...]
    vars: tuple[str, ...]
    order: str = "grevlex"

    def __init__(self, generators: Iterable[MultiPoly], vars: Sequence[str] | None = None, order: str = "grevlex"):
        gens = tuple(generators)
        if vars is None:
            if not gens:
                raise ValueError("variables needed for an ideal without generators")
            vars = gens[0].vars
        vars = tuple(vars)
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        object.__setattr__(self, "generators", tuple(g.with_vars(vars) for g in gens))
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "order", order)

    def with_generators(self, extra: Iterable[MultiPoly]) -> "Ideal":
        return Ideal(self.generators + tuple(extra), self.vars, self.order)


# -- integer polynomial kernel -------------------------------------------------

def _to_int(f: MultiPoly) -> IntPoly:
    den = 1
    for c in f.terms.values():
        den = lcm(den, Fraction(c).denominator)
    return _primitive({e: int(Fraction(c) * den) for e, c in f.terms.items()})


def _primitive(f: IntPoly) -> IntPoly:
    g = 0
    for v in f.values():
        g = gcd(g, v)
        if g == 1:
            break
    return {e: v // g for e, v in f.items()} if g > 1 else f


def _divides(m: Exp, n: Exp) -> bool:
    return all(a <= b for a, b in zip(m, n))


def _lcm(m: Exp, n: Exp) -> Exp:
    return tuple(max(a, b) for a, b in zip(m, n))


def _disjoint(m: Exp, n: Exp) -> bool:
    return all(not (a and b) for a, b in zip(m, n))


class _Poly:
    """Integer polynomial with cached leading monomial under a fixed order."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: IntPoly, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _reduce(f: IntPoly, G: Sequence[_Poly], key, scale_out: list | None = None) -> IntPoly:
    """Fully reduce ``f`` by ``G``; returns a primitive remainder ``r`` with ``s*f = r + (member)``.

    When ``scale_out`` is given, the rational ``s`` is appended to it.
    """
    f = dict(f)
    rem: IntPoly = {}
    scale = Fraction(1)
    while f:
        m = max(f, key=key)
        c = f[m]
        for g in G:
            if _divides(g.lm, m):
                break
        else:
            rem[m] = c
            del f[m]
            continue
        k = gcd(c, g.lc)
        mf, mg = g.lc // k, c // k
        if mf < 0:
            mf, mg = -mf, -mg
        if mf != 1:
            f = {e: v * mf for e, v in f.items()}
            rem = {e: v * mf for e, v in rem.items()}
            scale *= mf
        q = tuple(a - b for a, b in zip(m, g.lm))
        for e, v in g.terms.items():
            ne = tuple(a + b for a, b in zip(e, q))
            nv = f.get(ne, 0) - mg * v
            if nv:
                f[ne] = nv
            else:
                f.pop(ne, None)
        if len(f) > 8 and mf != 1:
            cont = 0
            for v in f.values():
                cont = gcd(cont, v)
            for v in rem.values():
                cont = gcd(cont, v)
            if cont > 1:
                f = {e: v // cont for e, v in f.items()}
                rem = {e: v // cont for e, v in rem.items()}
                scale /= cont
    if rem:
        cont = 0
        for v in rem.values():
            cont = gcd(cont, v)
        if cont > 1:
            rem = {e: v // cont for e, v in rem.items()}
            scale /= cont
    if scale_out is not None:
        scale_out.append(scale)
    return rem


def _spoly(f: _Poly, g: _Poly) -> IntPoly:
    L = _lcm(f.lm, g.lm)
    qf = tuple(a - b for a, b in zip(L, f.lm))
    qg = tuple(a - b for a, b in zip(L, g.lm))
    k = gcd(f.lc, g.lc)
    cf, cg = g.lc // k, f.lc // k
    out: IntPoly = {}
    for e, v in f.terms.items():
        out[tuple(a + b for a, b in zip(e, qf))] = cf * v
    for e, v in g.terms.items():
        ne = tuple(a + b for a, b in zip(e, qg))
        nv = out.get(ne, 0) - cg * v
        if nv:
            out[ne] = nv
        else:
            out.pop(ne, None)
    return out


def _update(G: list[int], B: list[tuple[int, int]], h: int, polys: list[_Poly]):
    """Gebauer-Moeller installation of the new basis element ``h``."""
    lh = polys[h].lm
    C = [g for g in G]
    D: list[int] = []
    while C:
        g1 = C.pop()
        L1 = _lcm(lh, polys[g1].lm)
        if _disjoint(lh, polys[g1].lm) or not any(
            _divides(_lcm(lh, polys[g2].lm), L1) for g2 in C + D
        ):
            D.append(g1)
    E = [(g, h) for g in D if not _disjoint(lh, polys[g].lm)]
    Bn = []
    for g1, g2 in B:
        L = _lcm(polys[g1].lm, polys[g2].lm)
        if (_divides(lh, L) and _lcm(polys[g1].lm, lh) != L and _lcm(polys[g2].lm, lh) != L):
            continue
        Bn.append((g1, g2))
    Bn.extend(E)
    Gn = [g for g in G if not _divides(lh, polys[g].lm)]
    Gn.append(h)
    return Gn, Bn


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis."""

    basis: tuple[MultiPoly, ...]
    vars: tuple[str, ...]
    order: str
    _internal: tuple = field(default=(), repr=False, compare=False)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()

    def is_zero_ideal(self) -> bool:
        return not self.basis

    def _polys(self) -> list[_Poly]:
        key = ORDERS[self.order]
        return [_Poly(_to_int(g), key) for g in self.basis]

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        """The unique remainder of ``f`` modulo the basis."""
        f = f.with_vars(self.vars)
        if f.is_zero():
            return f
        den = 1
        for c in f.terms.values():
            den = lcm(den, Fraction(c).denominator)
        fi = {e: int(Fraction(c) * den) for e, c in f.terms.items()}
        sc: list = []
        r = _reduce(fi, self._internal or self._polys(), ORDERS[self.order], sc)
        factor = 1 / (sc[0] * den)
        return MultiPoly({e: v * factor for e, v in r.items()}, self.vars)

    def contains(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()

    def leading_monomials(self) -> list[Exp]:
        return [g.leading_term(self.order)[0] for g in self.basis]

    def is_zero_dimensional(self) -> bool:
        """Finitely many common zeros: every variable has a pure power among the leading monomials."""
        if self.is_unit():
            return True
        lms = self.leading_monomials()
        return all(
            any(m[k] > 0 and sum(m) == m[k] for m in lms) for k in range(len(self.vars))
        )

    def standard_monomials(self) -> list[Exp]:
        """Monomials outside the leading-term ideal (a basis of the quotient ring)."""
        if not self.is_zero_dimensional():
            raise ValueError("quotient is infinite dimensional")
        if self.is_unit():
            return []
        lms = self.leading_monomials()
        n = len(self.vars)
        seen = {(0,) * n}
        todo = [(0,) * n]
        while todo:
            m = todo.pop()
            for k in range(n):
                e = m[:k] + (m[k] + 1,) + m[k + 1:]
                if e not in seen and not any(_divides(l, e) for l in lms):
                    seen.add(e)
                    todo.append(e)
        return sorted(seen, key=ORDERS[self.order])


def buchberger(I: Ideal, limits: Limits = Limits()) -> GroebnerBasis:
    key = ORDERS[I.order]
    polys: list[_Poly] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def install(terms: IntPoly):
        nonlocal G, B
        p = _Poly(terms, key)
        deg = max(sum(e) for e in terms)
        if deg > limits.max_degree:
            raise ResourceLimitError("degree", limits.max_degree, deg)
        polys.append(p)
        G, B = _update(G, B, len(polys) - 1, polys)
        if len(G) > limits.max_basis_size:
            raise ResourceLimitError("basis size", limits.max_basis_size, len(G))

    gens = sorted((_to_int(g) for g in I.generators if not g.is_zero()),
                  key=lambda t: key(max(t, key=key)))
    for g in gens:
        r = _reduce(g, [polys[i] for i in G], key)
        if r:
            if all(not any(e) for e in r):
                return _finish([_Poly({(0,) * len(I.vars): 1}, key)], I)
            install(r)
    while B:
        best = min(range(len(B)), key=lambda i: _pair_key(B[i], polys, key))
        g1, g2 = B.pop(best)
        s = _spoly(polys[g1], polys[g2])
        if not s:
            continue
        r = _reduce(s, [polys[i] for i in G], key)
        if r:
            if all(not any(e) for e in r):
                return _finish([_Poly({(0,) * len(I.vars): 1}, key)], I)
            install(_primitive(r))
    return _finish([polys[i] for i in G], I)


def _pair_key(pair, polys, key):
    """Normal strategy: smallest lcm in the working order.

    For graded orders this is the usual lowest-degree-first choice; under lex,
    choosing by degree instead lets intermediate coefficients explode.
    """
    return key(_lcm(polys[pair[0]].lm, polys[pair[1]].lm))


def _finish(G: list[_Poly], I: Ideal) -> GroebnerBasis:
    """Minimalize, inter-reduce and monicize."""
    key = ORDERS[I.order]
    G = sorted(G, key=lambda p: key(p.lm))
    minimal: list[_Poly] = []
    for p in G:
        if not any(_divides(q.lm, p.lm) for q in minimal):
            minimal.append(p)
    reduced: list[_Poly] = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = dict(p.terms)
        del tail[p.lm]
        sc: list = []
        r = _reduce(tail, others, key, sc) if tail else {}
        s = sc[0] if sc else Fraction(1)
        # s*tail = r + member, so p ~ s*lc*x^lm + r
        terms = {e: Fraction(v) for e, v in r.items()}
        terms[p.lm] = s * p.lc
        reduced.append(_Poly(_primitive_frac(terms), key))
    out = []
    for p in reduced:
        inv = Fraction(1, p.lc)
        out.append(MultiPoly({e: v * inv for e, v in p.terms.items()}, I.vars))
    out.sort(key=lambda g: key(g.leading_term(I.order)[0]), reverse=True)
    return GroebnerBasis(tuple(out), I.vars, I.order, tuple(reduced))


def _primitive_frac(terms: dict[Exp, Fraction]) -> IntPoly:
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    return _primitive({e: int(c * den) for e, c in terms.items()})


# -- queries ---------------------------------------------------------------------

def is_groebner(basis: Sequence[MultiPoly], order: str = "grevlex") -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    key = ORDERS[order]
    polys = [_Poly(_to_int(g), key) for g in basis if not g.is_zero()]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            s = _spoly(polys[i], polys[j])
            if s and _reduce(s, polys, key):
                return False
    return True


def is_member(f: MultiPoly, I: Ideal, limits: Limits = Limits()) -> bool:
    return buchberger(I, limits).contains(f)


def is_unit_ideal(I: Ideal, limits: Limits = Limits()) -> bool:
    return buchberger(I, limits).is_unit()


def _fresh(vars: Sequence[str], stem: str = "w") -> str:
    name = stem
    while name in vars:
        name = "_" + name
    return name


def radical_member(f: MultiPoly, I: Ideal | GroebnerBasis, limits: Limits = Limits(),
                   method: str = "auto") -> bool:
    """Whether some power of ``f`` lies in ``I`` (an ideal or a basis already computed).

    ``f`` is first reduced modulo ``I``.  With ``method="rabinowitsch"`` (and
    for positive-dimensional ``I`` under ``"auto"``) the test is whether
    ``1 - w*f`` together with ``I`` generates the unit ideal.  For
    zero-dimensional ``I`` the quotient has finite dimension ``N`` and ``f`` is
    in the radical iff it is nilpotent there, iff ``f^(2^k)`` reduces to zero
    for ``2^k >= N``; ``"auto"`` uses this cheaper test.
    """
    if method not in ("auto", "rabinowitsch"):
        raise ValueError(f"unknown method {method!r}")
    GB = I if isinstance(I, GroebnerBasis) else buchberger(I, limits)
    if GB.is_unit():
        return True
    fr = GB.normal_form(f)
    if fr.is_zero():
        return True
    if method == "auto" and GB.is_zero_dimensional():
        N = len(GB.standard_monomials())
        power = 1
        while power < N:
            fr = GB.normal_form(fr * fr)
            if fr.is_zero():
                return True
            power *= 2
        return False
    w = _fresh(GB.vars)
    vars = GB.vars + (w,)
    wv = MultiPoly.gen(w, vars)
    gens = list(GB.basis) + [1 - wv * fr.with_vars(vars)]
    return is_unit_ideal(Ideal(gens, vars, GB.order), limits)


def minimal_polynomial(f: MultiPoly, GB: GroebnerBasis, var: str = "t") -> UniPoly:
    """Monic minimal polynomial of multiplication by ``f`` on a finite-dimensional quotient.

    Its roots are exactly the values of ``f`` at the common zeros of the ideal.
    """
    basis = GB.standard_monomials()
    if not basis:
        return UniPoly.const(1, var)
    index = {m: k for k, m in enumerate(basis)}

    def coords(g: MultiPoly) -> list[Fraction]:
        v = [Fraction(0)] * len(basis)
        for e, c in g.terms.items():
            v[index[e]] = Fraction(c)
        return v

    # rows: reduced power vectors with pivot columns, each carrying its combination of powers
    rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
    fr = GB.normal_form(f)
    g = MultiPoly.const(1, GB.vars)
    for k in range(len(basis) + 1):
        v = coords(g)
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for piv, rv, rc in rows:
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, rv)]
                combo = [a - c * (rc[i] if i < len(rc) else 0) for i, a in enumerate(combo)]
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is None:
            return UniPoly(combo, var).monic()
        inv = 1 / v[piv]
        rows.append((piv, [a * inv for a in v], [a * inv for a in combo]))
        g = GB.normal_form(g * fr)
    raise AssertionError("powers must become dependent within the quotient dimension")


def eliminate(I: Ideal, keep: Sequence[str], limits: Limits = Limits()) -> Ideal:
    """Generators of the elimination ideal ``I`` intersected with ``Q[keep]``."""
    keep = tuple(keep)
    drop = tuple(v for v in I.vars if v not in keep)
    vars = drop + keep
    GB = buchberger(Ideal(I.generators, vars, "lex"), limits)
    nd = len(drop)
    out = [
        MultiPoly({e[nd:]: c for e, c in g.terms.items()}, keep)
        for g in GB.basis
        if all(not any(e[:nd]) for e in g.terms)
    ]
    return Ideal(out, keep, "lex")
