"""Exact certification that one starting arrangement of a three-player
maximal-bet gambler's ruin eliminates player 1 more often than another."""

from .algebra import Ineq, LinForm, Point, Region, V, X, Y, Z
from .expansion import IDENTITY, ROT_YZX, ROT_ZYX, SWAP_XY, Substitution, alpha, build_delta, expand_h

__all__ = [
    "Ineq",
    "LinForm",
    "Point",
    "Region",
    "V",
    "X",
    "Y",
    "Z",
    "IDENTITY",
    "SWAP_XY",
    "ROT_YZX",
    "ROT_ZYX",
    "Substitution",
    "alpha",
    "build_delta",
    "expand_h",
]

__version__ = "0.1.0"
