"""Certified enclosures of the dominant root and its derived constants."""

from src.analytic.constants import (
    DerivedConstants,
    HeightBounds,
    binet_residual,
    constants_for,
    derived_constants,
    height_bounds,
)
from src.analytic.interval import RealInterval
from src.analytic.roots import RootCertificate, dominant_root, psi_eval, psi_sign, root_digits

__all__ = [
    "DerivedConstants",
    "HeightBounds",
    "RealInterval",
    "RootCertificate",
    "binet_residual",
    "constants_for",
    "derived_constants",
    "dominant_root",
    "height_bounds",
    "psi_eval",
    "psi_sign",
    "root_digits",
]
