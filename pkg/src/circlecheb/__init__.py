"""Weighted Chebyshev polynomials on the unit circle for the weight |z-1|^s.

Core entry points:

  circle.solve_free / circle.solve_constrained   the interval-reduction pipeline
  oracle.oracle_free / oracle.oracle_constrained independent minimax checks
  remez.remez_solve                              weighted Remez on [-1, 1]
  inequalities.*                                 derivative-norm verifications
  zeros.*                                        zero statistics and lemniscates
"""

from . import circle, inequalities, oracle, polynomial, remez, rootfn, zeros
from .circle import CircleSolveResult, halasz_mu_lambda, solve_constrained, solve_free
from .polynomial import MonicPoly
from .remez import GeneralizedWeight, remez_solve
from .rootfn import WeightedRootFn

__version__ = "0.1.0"

__all__ = [
    "CircleSolveResult",
    "GeneralizedWeight",
    "MonicPoly",
    "WeightedRootFn",
    "circle",
    "halasz_mu_lambda",
    "inequalities",
    "oracle",
    "polynomial",
    "remez",
    "remez_solve",
    "rootfn",
    "solve_constrained",
    "solve_free",
    "zeros",
]
