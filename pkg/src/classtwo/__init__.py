"""Class-two exponent-p groups of order <= p^8 (plus the order-p^9 outlier).

Instantiates the full catalog of 70 class-two exponent-p groups with order
at most p^8, together with the six-generator order-p^9 group whose conjugacy
count and automorphism count are controlled by an elliptic curve.  Provides
exact conjugacy-class counting, automorphism-group orders, and a verification
harness comparing everything against the catalog's closed-form formulas.
"""

from classtwo.ffield import PrimeModulus, ResolvedParams, resolve_params
from classtwo.structure import Presentation, GroupElement
from classtwo.catalog import Catalog, load_catalog

__all__ = [
    "PrimeModulus",
    "ResolvedParams",
    "resolve_params",
    "Presentation",
    "GroupElement",
    "Catalog",
    "load_catalog",
]

__version__ = "0.1.0"
