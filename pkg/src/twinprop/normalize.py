"""Linear changes of the fibre coordinates that put a derivation in general position."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator

from .derivation import COACTION_VARS, TwinDerivation, branch_data, check_free
from .errors import NormalizationFailed
from .multipoly import MultiPoly
from .unipoly import poly_gcd

SWAP = "swap-into-z1"
MIX = "mix-z2"


@dataclass(frozen=True)
class Shear:
    """``z1 <- z1 + z2`` (kind ``swap-into-z1``) or ``z2 <- lam*z2 + mu*z1`` (kind ``mix-z2``)."""

    kind: str
    lam: Fraction = Fraction(1)
    mu: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in (SWAP, MIX):
            raise ValueError(f"unknown shear kind {self.kind!r}")
        if self.lam == 0:
            raise ValueError("shear needs a nonzero lambda")
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "mu", Fraction(self.mu))

    def is_identity(self) -> bool:
        return self.kind == MIX and self.lam == 1 and self.mu == 0

    def forward(self, vars=COACTION_VARS) -> dict[str, MultiPoly]:
        """New coordinates written in the old ones."""
        z1, z2 = MultiPoly.gen("z1", vars), MultiPoly.gen("z2", vars)
        if self.kind == SWAP:
            return {"z1": z1 + z2, "z2": z2}
        return {"z1": z1, "z2": z2 * self.lam + z1 * self.mu}

    def backward(self, vars=COACTION_VARS) -> dict[str, MultiPoly]:
        """Old coordinates written in the new ones."""
        z1, z2 = MultiPoly.gen("z1", vars), MultiPoly.gen("z2", vars)
        if self.kind == SWAP:
            return {"z1": z1 - z2, "z2": z2}
        return {"z1": z1, "z2": (z2 - z1 * self.mu) * (1 / self.lam)}

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lambda": str(self.lam), "mu": str(self.mu)}


def apply_shear(D: TwinDerivation, S: Shear) -> TwinDerivation:
    """The derivation in the sheared coordinates."""
    if S.kind == SWAP:
        return TwinDerivation(D.r, D.p1 + D.p2, D.p2)
    return TwinDerivation(D.r, D.p1, D.p2 * S.lam + D.p1 * S.mu)


def shear_candidates() -> Iterator[tuple[int, int]]:
    """``(lam, mu)`` in the order (1,0), (1,1), (1,-1), (2,0), (1,2), (1,-2), ..."""
    s = 1
    while True:
        for lam in range(1, s + 1):
            m = s - lam
            yield lam, m
            if m:
                yield lam, -m
        s += 1


def in_general_position(D: TwinDerivation) -> bool:
    p1, p2 = D.pbar
    if p1.is_zero() or p2.is_zero():
        return False
    if poly_gcd(p1, p2).degree != 0:
        return False
    R1, R2 = branch_data(D, 1).preimage, branch_data(D, 2).preimage
    return poly_gcd(R1, R2).degree == 0


def normalize(D: TwinDerivation, bound: int = 200) -> tuple[TwinDerivation, list[Shear]]:
    """Find shears making both residues nonzero and the branch preimages disjoint.

    Returns the transformed derivation with the shears applied in order.  The
    identity is tried first, so inputs already in general position come back
    with no shears.
    """
    if D.n == 0:
        raise ValueError("r is a unit; nothing to normalize")
    if not check_free(D):
        raise ValueError("derivation is not free")
    shears: list[Shear] = []
    if D.pbar[0].is_zero():
        S = Shear(SWAP)
        D = apply_shear(D, S)
        shears.append(S)
    for lam, mu in islice(shear_candidates(), bound):
        S = Shear(MIX, Fraction(lam), Fraction(mu))
        candidate = apply_shear(D, S)
        if in_general_position(candidate):
            if not S.is_identity():
                shears.append(S)
            return candidate, shears
    raise NormalizationFailed(f"no shear among the first {bound} candidates puts the derivation in general position")
