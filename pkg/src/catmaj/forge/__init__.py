"""Explicit catalysts: closed-form integrals, the stitched profile, and the search around it."""

from .certify import CatalystCertificate, Method, SearchBudget, certify, construct
from .desingularize import desingularize, desingularized
from .integrals import alpha, alpha_scaled, beta, beta_scaled
from .profile import StitchParams, ZStar, discretize, stitch_zstar
from .search import brute_force_search
from .steps import check_step1, check_step2

__all__ = [
    "CatalystCertificate",
    "Method",
    "SearchBudget",
    "StitchParams",
    "ZStar",
    "alpha",
    "alpha_scaled",
    "beta",
    "beta_scaled",
    "brute_force_search",
    "certify",
    "check_step1",
    "check_step2",
    "construct",
    "desingularize",
    "desingularized",
    "discretize",
    "stitch_zstar",
]
