"""Properness of the action generated by a twin-triangular derivation.

Over the punctured base the quotient is glued from copies indexed by the
roots of ``P_i(y) - t``; on overlaps the fibre coordinates change by
``x^-n * (P_j(sigma) - P_j(sigma'))`` for two roots ``sigma != sigma'``.  The
action is proper when, for every pair of distinct roots over every regular
value, some coefficient of ``x^0 .. x^(n-1)`` in that difference is nonzero.

Both quantifiers are discharged at once in the pair algebra: writing ``c_m``
for the (denominator-cleared) coefficients, the condition holds iff every
common zero of ``D(a, b)`` and all ``c_m`` lies over a branch value, i.e. iff
``alpha_i(Pbar_i(a))`` is in the radical of ``(D, c_0, ..., c_(n-1))``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .config import Config
from .derivation import TwinDerivation, check_free
from .errors import NormalizationFailed, RegularValueRequired, ResourceLimitError
from .groebner import GroebnerBasis, Ideal, buchberger, minimal_polynomial, radical_member
from .local import TruncSeries
from .multipoly import MultiPoly
from .normalize import Shear, normalize
from .pairs import (
    PAIR_VARS,
    PairAlgebra,
    PairSeries,
    as_crit,
    eval_local_poly_series,
    generic_root_series,
    hensel_factorize,
)
from .unipoly import UniPoly, coprime_part, rational_roots

SATISFIED = "SATISFIED"
VIOLATED = "VIOLATED"
VACUOUS = "VACUOUS"

PROPER = "PROPER"
IMPROPER = "IMPROPER"
NOT_FREE = "NOT_FREE"
TRIVIALLY_PROPER = "TRIVIALLY_PROPER"
INDETERMINATE = "INDETERMINATE"

STRICT_UNIT = "strict-unit"
REGULAR_LOCUS = "regular-locus"


@dataclass(frozen=True)
class LaurentCocycle:
    """``x^-pole_order * sum_k tail[k] x^k`` with coefficients in the pair algebra."""

    pole_order: int
    tail: PairSeries

    @property
    def algebra(self) -> PairAlgebra:
        return self.tail.algebra

    def cleared_coefficients(self) -> list[MultiPoly]:
        """Tail coefficients with the shared denominator dropped."""
        return list(self.tail.coeffs)


@dataclass(frozen=True)
class AffinenessResult:
    affine: bool
    valuation: int | None
    reason: str
    certificate: tuple | None = None

    def __bool__(self) -> bool:
        return self.affine


@dataclass(frozen=True)
class Witness:
    """Eliminant in ``t`` of the bad pairs, with its regular rational roots."""

    eliminant: UniPoly | None
    values: tuple[Fraction, ...]
    sampled: bool = False

    def to_dict(self) -> dict:
        return {
            "eliminant": None if self.eliminant is None else str(self.eliminant),
            "values": [str(v) for v in self.values],
            "sampled": self.sampled,
        }


@dataclass(frozen=True)
class ComponentVerdict:
    i: int
    j: int
    status: str
    witness: Witness | None = None
    nonzero_coefficients: tuple[int, ...] = ()
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "status": self.status,
            "nonzero_coefficients": list(self.nonzero_coefficients),
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass
class VerdictReport:
    input: TwinDerivation
    overall: str
    components: list[ComponentVerdict] = field(default_factory=list)
    shears: list[Shear] = field(default_factory=list)
    normalized: TwinDerivation | None = None
    flags: list[str] = field(default_factory=list)
    error: str | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def witnesses(self) -> list[tuple[int, int, Witness]]:
        return [(c.i, c.j, c.witness) for c in self.components if c.witness is not None]


# -- cocycles ----------------------------------------------------------------------

@dataclass(frozen=True)
class _RootData:
    algebra: PairAlgebra
    sigma: TruncSeries


def _root_data(D: TwinDerivation, i: int) -> _RootData:
    return _cached_root_data(D, i)


@lru_cache(maxsize=64)
def _cached_root_data(D: TwinDerivation, i: int) -> _RootData:
    if D.n < 1:
        raise ValueError("r is a unit: there is no transition cocycle")
    Pbar = D.Pbar[i - 1]
    if Pbar.degree < 2:
        raise ValueError(f"component {i} has residue degree {Pbar.degree}; no pairs of roots")
    A = PairAlgebra(Pbar)
    H = hensel_factorize(D.P[i - 1], D.n)
    return _RootData(A, generic_root_series(H, A))


def base_cocycle(D: TwinDerivation, i: int) -> LaurentCocycle:
    """``x^-n * (sigma_a - sigma_b)``, the change of the y-coordinate between sheets."""
    R = _root_data(D, i)
    sa = PairSeries.from_crit_series(R.sigma, R.algebra, "a")
    return LaurentCocycle(D.n, sa - sa.swap())


def lifted_cocycle(D: TwinDerivation, i: int, j: int) -> LaurentCocycle:
    """``x^-n * (P_j(sigma_a) - P_j(sigma_b))``, the change of the z_j invariant."""
    if i == j:
        raise ValueError("lifted cocycle needs two different indices")
    R = _root_data(D, i)
    vals = eval_local_poly_series(D.P[j - 1], R.sigma)
    fa = PairSeries.from_crit_series(vals, R.algebra, "a")
    return LaurentCocycle(D.n, fa - fa.swap())


def _cleared(c: MultiPoly) -> MultiPoly:
    return c.primitive("lex")


def cocycle_affine(f: LaurentCocycle, mode: str = REGULAR_LOCUS, min_pole: int = 1,
                   config: Config = Config()) -> AffinenessResult:
    """Whether the leading coefficient of ``f`` is a unit and sits at a genuine pole.

    ``strict-unit`` asks for a unit of ``B[1/(Pbar'(a) Pbar'(b))]``, the ring
    where the lifted roots live.  ``regular-locus`` only asks that the
    coefficient has no zero over a regular value.
    """
    A = f.algebra
    m = f.tail.leading_index()
    if m is None:
        return AffinenessResult(False, None, "cocycle is zero")
    if f.pole_order - m < min_pole:
        return AffinenessResult(False, m, f"pole order {f.pole_order - m} below {min_pole}")
    c = A.reduce(f.tail.coeffs[m])
    if mode == STRICT_UNIT:
        h = A.crit_a * A.norm(A.crit("b"))
        inv = A.invert(c, h)
        if inv is None:
            return AffinenessResult(False, m, "leading coefficient is not a unit")
        return AffinenessResult(True, m, "unit", (inv[0], inv[1]))
    if mode != REGULAR_LOCUS:
        raise ValueError(f"unknown mode {mode!r}")
    I = Ideal([A.D, _cleared(c)], PAIR_VARS)
    if radical_member(A.branch_at_a(), I, config.limits):
        return AffinenessResult(True, m, "leading coefficient vanishes only over branch values")
    return AffinenessResult(False, m, "leading coefficient vanishes over a regular value")


# -- the component checks -------------------------------------------------------------

def cleared_coefficients(D: TwinDerivation, i: int, j: int, config: Config = Config()):
    """Nonzero coefficients ``c_m`` of the lifted cocycle at admissible pole orders.

    Each coefficient is cleared with its own denominator: the x^m coefficient of
    ``P_j(sigma_a)`` is ``N_m(a)/Pbar'(a)^e``, so ``c_m`` is
    ``N_m(a) Pbar'(b)^e - N_m(b) Pbar'(a)^e`` reduced modulo ``D`` and made
    primitive.  Since ``Pbar'(a)`` and ``Pbar'(b)`` are non-zero-divisors of the
    free ``Q[a]``-module ``B``, clearing keeps nonzero coefficients nonzero and
    only adds zeros over branch values.
    """
    R = _root_data(D, i)
    A = R.algebra
    vals = eval_local_poly_series(D.P[j - 1], R.sigma)
    out = []
    for m in range(D.n - config.min_pole + 1):
        c = as_crit(vals[m], A.crit_a)
        ha, hb = A.h_power(c.exp, "a"), A.h_power(c.exp, "b")
        cm = A.reduce(A.embed(c.num, "a") * hb - A.embed(c.num, "b") * ha)
        if not cm.is_zero():
            out.append((m, _cleared(cm)))
    return A, out


def regular_values(alpha: UniPoly) -> Iterator[Fraction]:
    """Rationals 0, 1, -1, 2, -2, ... that are not roots of ``alpha``."""
    k = 0
    while True:
        for v in ((0,) if k == 0 else (k, -k)):
            if alpha(Fraction(v)) != 0:
                yield Fraction(v)
        k += 1


def _witness(A: PairAlgebra, GB: GroebnerBasis, D: TwinDerivation, i: int, j: int,
             config: Config) -> Witness:
    """Values of ``t`` over which some pair of roots kills every coefficient.

    For a zero-dimensional coefficient ideal these are the roots of the minimal
    polynomial of ``t = Pbar(a)`` on the quotient, less the branch values.
    Otherwise a whole curve of bad pairs dominates the t-line and the first
    regular rational value confirmed by :func:`specialized_check` is reported.
    """
    if GB.is_zero_dimensional():
        g = minimal_polynomial(A.embed(A.t_of_a), GB, "t")
        g = coprime_part(g, A.branch.rename("t")).monic()
        roots = rational_roots(g) if g.degree > 0 else []
        return Witness(g, tuple(roots or ()))
    for lam in regular_values(A.branch):
        if specialized_check(D, i, j, lam, config) == VIOLATED:
            return Witness(None, (lam,), sampled=True)
    raise AssertionError("unreachable")  # regular_values is infinite


def generic_check(D: TwinDerivation, i: int, j: int, config: Config = Config()) -> ComponentVerdict:
    """All regular values and all pairs of roots at once (``D`` already normalized).

    Coefficients are added to the ideal one at a time, each reduced modulo the
    basis so far; a larger ideal only makes the radical test easier, so the
    first success is final.  The ideal always contains ``D(a, b)``, which is
    monic in ``b``, so its zero set is finite over the a-line.  A
    positive-dimensional zero set is therefore a curve on which ``t = Pbar(a)``
    is nonconstant; it meets regular values and the component is violated.
    """
    start = time.perf_counter()
    if D.Pbar[i - 1].degree <= 1:
        return ComponentVerdict(i, j, VACUOUS, seconds=time.perf_counter() - start)
    A, coeffs = cleared_coefficients(D, i, j, config)
    nonzero = tuple(m for m, _ in coeffs)
    alpha_a = A.branch_at_a()
    GB = buchberger(Ideal([A.D], PAIR_VARS), config.limits)
    for _, c in coeffs:
        c = GB.normal_form(c)
        if c.is_zero():
            continue
        GB = buchberger(Ideal(list(GB.basis) + [_cleared(c)], PAIR_VARS), config.limits)
        if GB.is_zero_dimensional() and radical_member(alpha_a, GB, config.limits):
            return ComponentVerdict(i, j, SATISFIED, None, nonzero, time.perf_counter() - start)
    w = _witness(A, GB, D, i, j, config)
    return ComponentVerdict(i, j, VIOLATED, w, nonzero, time.perf_counter() - start)


def specialized_check(D: TwinDerivation, i: int, j: int, lam, config: Config = Config()) -> str:
    """The same condition over the single value ``t = lam``, which must be regular."""
    lam = Fraction(lam)
    if D.Pbar[i - 1].degree < 2:
        raise ValueError(f"component {i} has no pairs of roots")
    A, coeffs = cleared_coefficients(D, i, j, config)
    if A.branch(lam) == 0:
        raise RegularValueRequired(f"t = {lam} is a branch value of component {i}")
    GB = buchberger(Ideal([A.D, A.embed(A.t_of_a) - lam], PAIR_VARS), config.limits)
    for _, c in coeffs:
        c = GB.normal_form(c)
        if c.is_zero():
            continue
        GB = buchberger(Ideal(list(GB.basis) + [_cleared(c)], PAIR_VARS), config.limits)
        if GB.is_unit():
            return SATISFIED
    return VIOLATED


def properness_verdict(D: TwinDerivation, config: Config = Config()) -> VerdictReport:
    start = time.perf_counter()
    report = VerdictReport(D, INDETERMINATE)
    if config.strict_pole:
        report.flags.append("strict-pole")
    if not check_free(D):
        report.overall = NOT_FREE
        return _finish(report, start)
    if D.n == 0:
        report.overall = TRIVIALLY_PROPER
        return _finish(report, start)
    try:
        N, shears = normalize(D, config.shear_search_bound)
    except NormalizationFailed as exc:
        report.error = f"NORMALIZATION_FAILED: {exc}"
        return _finish(report, start)
    report.normalized, report.shears = N, shears
    for k, P in enumerate(N.Pbar, start=1):
        if P.degree <= 1:
            report.flags.append(f"constant-residue-p{k}")
    t0 = time.perf_counter()
    report.timings["normalize"] = t0 - start
    failed = None
    for i, j in ((1, 2), (2, 1)):
        try:
            cv = generic_check(N, i, j, config)
        except ResourceLimitError as exc:
            failed = f"RESOURCE_LIMIT: {exc}"
            continue
        report.components.append(cv)
        report.timings[f"component_{i}{j}"] = cv.seconds
    if any(c.status == VIOLATED for c in report.components):
        report.overall = IMPROPER
    elif failed:
        report.error = failed
    else:
        report.overall = PROPER
    return _finish(report, start)


def _finish(report: VerdictReport, start: float) -> VerdictReport:
    report.timings["total"] = time.perf_counter() - start
    return report
