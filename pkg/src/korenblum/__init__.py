"""Numerical certification of the maximum principle constant on annuli.

The numbers produced here are floating-point certificates with explicit
error budgets, not proofs.
"""

from .annulus import (
    AnnulusDomain,
    SymmetricAnnulus,
    TruncationPolicy,
    cstar_annulus,
    cstar_circle,
    cstar_symmetric,
    product_f,
)
from .bounds import ClaimReport, F_bound, GridSpec, gamma_upper
from .certification import Certificate, SearchResult, certify, search_max_constant
from .errors import (
    ConsistencyError,
    DegenerateCriterionError,
    DomainError,
    InvalidBracketError,
    KorenblumError,
    NonConvergenceError,
    NonMonotoneError,
)
from .kernels import BACKEND
from .metrics import pseudo_distance
from .oracles import LaurentFunction, PairReport, check_pair, cstar_lower_bound
from .quadrature import QuadratureEstimate, integrate_finite, integrate_gaussian_tail

__all__ = [
    "AnnulusDomain", "SymmetricAnnulus", "TruncationPolicy", "cstar_annulus", "cstar_circle",
    "cstar_symmetric", "product_f", "ClaimReport", "F_bound", "GridSpec", "gamma_upper",
    "Certificate", "SearchResult", "certify", "search_max_constant", "ConsistencyError",
    "DegenerateCriterionError", "DomainError", "InvalidBracketError", "KorenblumError",
    "NonConvergenceError", "NonMonotoneError", "BACKEND", "pseudo_distance", "LaurentFunction",
    "PairReport", "check_pair", "cstar_lower_bound", "QuadratureEstimate", "integrate_finite",
    "integrate_gaussian_tail",
]
