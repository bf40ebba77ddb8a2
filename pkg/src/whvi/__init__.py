"""Weakly homogeneous variational inequalities over polyhedral sets.

Core objects: WeaklyHomogeneousMap (maps), Polyhedron (geometry), residual
and homotopy machinery (residuals), condition checkers (checkers), the
homotopy/Newton solver stack (solvers), brute-force ground truth (oracle),
instance documents (instances, schemas), the verification service (service)
and its command-line client (cli).
"""

from .geometry import ActiveSet, InconclusiveError, Polyhedron
from .maps import Monomial, RadicalTerm, WeaklyHomogeneousMap, verify_weak_homogeneity

__version__ = "0.1.0"

__all__ = [
    "ActiveSet",
    "InconclusiveError",
    "Monomial",
    "Polyhedron",
    "RadicalTerm",
    "WeaklyHomogeneousMap",
    "verify_weak_homogeneity",
    "__version__",
]
