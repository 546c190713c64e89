"""Best constant of the reciprocal-sum / product inequality on the unit simplex."""

from .bestconst import BestConstantResult, bounds_simple, compute_lambda, improved_upper, solve_tn
from .polyroot import Polynomial, RootBracket, bisect_unique_root, derivative, eval_horner, sign_changes
from .simplex import SimplexPoint, eval_g, eval_g_reduced, make_point, sample_random
from .verifier import Verdict, VerificationReport

__all__ = [
    "BestConstantResult",
    "Polynomial",
    "RootBracket",
    "SimplexPoint",
    "Verdict",
    "VerificationReport",
    "bisect_unique_root",
    "bounds_simple",
    "compute_lambda",
    "derivative",
    "eval_g",
    "eval_g_reduced",
    "eval_horner",
    "improved_upper",
    "make_point",
    "sample_random",
    "sign_changes",
    "solve_tn",
]

__version__ = "0.1.0"
