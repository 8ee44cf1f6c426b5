"""Growth, Markov and Bernstein constants of polynomials on convex bodies.

Subpackages: :mod:`polyineq.bodies`, :mod:`polyineq.geometry`,
:mod:`polyineq.chebyshev`, :mod:`polyineq.bernstein`, :mod:`polyineq.oracle`
and :mod:`polyineq.harness`.
"""

__version__ = "0.1.0"
