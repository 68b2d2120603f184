"""Decide properness of Ga-actions generated by twin-triangular derivations.

The main entry points are :func:`parse_derivation` and :func:`properness_verdict`.
"""

from .config import Config
from .criterion import generic_check, properness_verdict, specialized_check
from .derivation import TwinDerivation, check_free, coaction, invariant
from .normalize import normalize
from .parser import parse_derivation

__version__ = "0.1.0"

__all__ = [
    "Config",
    "TwinDerivation",
    "check_free",
    "coaction",
    "generic_check",
    "invariant",
    "normalize",
    "parse_derivation",
    "properness_verdict",
    "specialized_check",
]
