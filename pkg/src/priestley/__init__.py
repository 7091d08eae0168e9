"""Finite Priestley and Cornish duality with quasi-primality checks.

Posets and distributive lattices are in :mod:`order` and :mod:`birkhoff`;
spaces and algebras with unary operations in :mod:`cornish`; the generic
subalgebra and congruence engine in :mod:`subalg`; product subalgebras via
jointly surjective pairs in :mod:`duality`; verdicts in :mod:`primality`,
:mod:`ockham` and :mod:`ddp`.
"""

from .birkhoff import DistLattice, H, K
from .cornish import D, E, CornishAlgebra, CornishSpace, Signature, Word
from .errors import DEFAULT_GUARDS, GuardExceeded, Guards, PolarityError, StructureError, TheoremViolation
from .order import Poset
from .primality import Verdict, internal_sufficient, quasi_primal_family, quasi_primal_pair, semi_primal
from .structfmt import parse, render

__version__ = "0.1.0"

__all__ = [
    "DistLattice", "H", "K", "D", "E", "CornishAlgebra", "CornishSpace", "Signature", "Word",
    "DEFAULT_GUARDS", "GuardExceeded", "Guards", "PolarityError", "StructureError", "TheoremViolation",
    "Poset", "Verdict", "internal_sufficient", "quasi_primal_family", "quasi_primal_pair", "semi_primal",
    "parse", "render",
]
