"""Numerical laboratory for a ternary Diophantine inequality with prime
variables, studied through the Davenport-Heilbronn circle method."""

__version__ = "0.1.0"

from .approx import (
    Convergent,
    QuadraticIrrational,
    convergents,
    dichotomy_check,
    dirichlet,
    parse_ratio,
    scale_sequence,
)
from .arcs import (
    SelbergSpec,
    gallagher_lhs,
    gallagher_rhs,
    integrate_I,
    major_arc_error_terms,
    major_arc_J1,
    minor_arc_L2,
    selberg_J,
    trivial_arc_tail,
)
from .config import (
    CircleParams,
    ConfigError,
    FormParams,
    derive_circle_params,
    load_config,
    validate,
)
from .expsums import SumSpec, eval_S, eval_T, eval_U, eval_V
from .kernel import fourier_pair_check, k_fejer, k_hat, kernel_bound
from .lp import build_lp, solve_lp, verify_closed_form
from .primes import PrimeTable, cached_sieve, chebyshev_theta, sieve
from .quadrature import BudgetExceeded, QuadratureResult
from .search import best_miss, count_solutions, exact_weighted_sum, theorem_scan
