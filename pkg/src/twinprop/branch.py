"""Branch values and branch preimages of a polynomial map of the line."""

from __future__ import annotations

from .multipoly import MultiPoly, resultant
from .unipoly import UniPoly


def branch_polynomial(P: UniPoly, var: str = "t") -> UniPoly:
    """Monic squarefree polynomial whose roots are the critical values of ``P``.

    Computed as the squarefree part of ``Res_y(P(y) - t, P'(y))``; equals ``1``
    when ``P'`` is a nonzero constant.
    """
    p = P.derivative()
    if p.is_zero():
        raise ValueError("branch locus of a constant map")
    if p.degree == 0:
        return UniPoly.const(1, var)
    vs = ("y", var)
    y_poly = MultiPoly.from_unipoly(P.rename("y"), vs)
    t = MultiPoly.gen(var, vs)
    res = resultant(y_poly - t, MultiPoly.from_unipoly(p.rename("y"), vs), "y")
    return res.to_unipoly(var).squarefree_part()


def preimage_polynomial(P: UniPoly, var: str = "y") -> UniPoly:
    """Monic squarefree polynomial vanishing exactly on ``P^-1(critical values)``.

    ``Res_z(P'(z), P(y) - P(z))`` as a polynomial in ``y``.
    """
    p = P.derivative()
    if p.is_zero():
        raise ValueError("branch locus of a constant map")
    if p.degree == 0:
        return UniPoly.const(1, var)
    vs = ("z", var)
    Pz = MultiPoly.from_unipoly(P.rename("z"), vs)
    Py = MultiPoly.from_unipoly(P.rename(var), vs)
    res = resultant(MultiPoly.from_unipoly(p.rename("z"), vs), Py - Pz, "z")
    return res.to_unipoly(var).squarefree_part()
