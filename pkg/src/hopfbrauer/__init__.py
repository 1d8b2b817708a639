"""Brauer characters and Frobenius-Schur indicators of bismash products.

The package builds the Hopf algebra H = E^G # EF from a factorization
Q = FG of a permutation group, constructs its simple modules over fields of
characteristic 0 and p, and checks the decomposition theory and indicator
lifting results exactly.
"""

from .bismash import BismashProduct, HElem
from .cyclotomic import Cyc
from .factored import FactoredGroup, build, load_group_file, parse_group_text, sn_family
from .gf import GF, field
from .modular import TheoremViolation
from .perm import Perm, PermGroup, enumerate_group

__all__ = [
    "BismashProduct", "Cyc", "FactoredGroup", "GF", "HElem", "Perm", "PermGroup",
    "TheoremViolation", "build", "enumerate_group", "field", "load_group_file",
    "parse_group_text", "sn_family",
]
__version__ = "0.1.0"
