"""Inscribed ellipses, Bernstein-type factors, ridge and pluripotential constants."""

from .bounds import BOUND_KINDS, bernstein_bound, ellipse_constant, ridge_constant
from .ellipse import (EllipseResult, InscribedEllipse, best_ellipse, best_ellipse_simplex,
                      best_ellipse_symmetric, ellipse_in_body, milev_E, worst_direction_E)
from .pluripotential import (NormalDerivative, baran_normal_derivative, baran_simplex_V,
                             hypothesis_gap)

__all__ = [
    "BOUND_KINDS", "EllipseResult", "InscribedEllipse", "NormalDerivative",
    "baran_normal_derivative", "baran_simplex_V", "bernstein_bound", "best_ellipse",
    "best_ellipse_simplex", "best_ellipse_symmetric", "ellipse_constant", "ellipse_in_body",
    "hypothesis_gap", "milev_E", "ridge_constant", "worst_direction_E",
]
