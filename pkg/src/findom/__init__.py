"""
Finite domination of cochain complexes over the two-variable Laurent ring
``Z[x, 1/x, y, 1/y]``: Novikov-ring acyclicity tests, mapping tori, the
square's face-lattice diagrams and the finite replacement ``B'``.
"""

from .complexes import ChainMap, FreeComplex, Homotopy, cone
from .detector import check_finite_domination, eliminate, replay, witness
from .flavors import RingFlavor, detection_flavors, flavor_by_name, invert, is_unit
from .laurent import LaurentPoly

__all__ = [
    "ChainMap",
    "FreeComplex",
    "Homotopy",
    "LaurentPoly",
    "RingFlavor",
    "check_finite_domination",
    "cone",
    "detection_flavors",
    "eliminate",
    "flavor_by_name",
    "invert",
    "is_unit",
    "replay",
    "witness",
]

__version__ = "0.1.0"
