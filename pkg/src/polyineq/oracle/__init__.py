"""Independent LP-based verification of the closed-form constants.

The LP solver and polynomial basis load eagerly; the grid and extremal
oracles depend on :mod:`polyineq.bodies` (which itself uses the LP solver) and
are resolved on first access.
"""

from importlib import import_module

from .lp import LPSolution, lp_solve
from .poly import MultiPoly, eval_matrix, gradient_matrix, monomial_exponents

_LAZY = {
    "GridSpec": "grid", "make_grid": "grid",
    "bernstein_oracle": "extremal",
    "chebyshev_oracle": "extremal", "leading_growth_oracle": "extremal",
    "local_patch": "extremal",
}

__all__ = ["LPSolution", "MultiPoly", "eval_matrix", "gradient_matrix", "lp_solve",
           "monomial_exponents", *_LAZY]


def __getattr__(name):
    if name in _LAZY:
        return getattr(import_module(f".{_LAZY[name]}", __name__), name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
