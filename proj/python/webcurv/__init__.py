"""Curvature and equivalence of first-order ODEs y' = F(x, y) of 3-web type.

Domains are (xmin, xmax, ymin, ymax) tuples of an open rectangle.
"""

import json

from ._webcurv import (
    DomainError,
    Expr,
    ImageEscapesTarget,
    NonVanishingViolation,
    ParseError,
    UnknownIdentifier,
    Var,
    selftest,
    web_leaves,
    web_svg,
)
from . import _webcurv

__all__ = [
    "DomainError", "Expr", "ImageEscapesTarget", "NonVanishingViolation", "ParseError",
    "UnknownIdentifier", "Var", "classify", "curvature", "equivalent", "selftest",
    "transport_example", "verify_map", "web_leaves", "web_svg",
]

DEFAULT_DOMAIN = (0.5, 2.0, 0.5, 2.0)


def curvature(F, domain=DEFAULT_DOMAIN, seed=42):
    """K on the section alpha = 1, the full K, the connection form and the flatness verdict."""
    return json.loads(_webcurv._curvature(F, tuple(domain), seed))


def classify(F, domain=DEFAULT_DOMAIN, seed=42):
    return json.loads(_webcurv._classify(F, tuple(domain), seed))


def equivalent(F1, F2, domain1=DEFAULT_DOMAIN, domain2=None, seed=42):
    return json.loads(_webcurv._equivalent(F1, tuple(domain1), F2, tuple(domain2 or domain1), seed))


def verify_map(a, b, F1, F2, domain1=DEFAULT_DOMAIN, domain2=None, leaves=5, tol=1e-4, step=1e-3):
    """Check that (x, y) -> (a, b) carries the web of y' = F1 onto the web of y' = F2."""
    return json.loads(
        _webcurv._verify_map(a, b, F1, tuple(domain1), F2, tuple(domain2 or domain1), leaves, tol, step))


def transport_example(leaves=5, tol=1e-4, step=1e-3):
    """Transport of the y' = 1 - x and y' = x exp(-y) webs through (x - 1, ln y) and its inverse."""
    return json.loads(_webcurv._log_map_transport(leaves, tol, step))
