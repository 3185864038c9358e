"""Greedy chord-power energy sequences on spheres.

Exact binary-representation formulas on the circle, numeric greedy
generation on S^d, and the machinery verifying first- and second-order
energy asymptotics.
"""

from .asymptotics import (
    GBarResult,
    LimitReport,
    ThetaVector,
    g_bar,
    g_function,
    g_function_dlambda,
    limit_report,
    s_lambda,
    s_lambda_terms,
    subsequence_limit_lambda1,
    theta_from_odd,
)
from .binary import BinaryRep, decompose, square_identity_check
from .circle_exact import (
    DyadicAngle,
    SequenceRecord,
    canonical_sequence,
    chord,
    extremal_potential_gap,
    greedy_energy_exact,
    greedy_extremal_potential,
    kappa,
    midpoint_potential,
    r_lambda,
    roots_energy,
    roots_energy_gap,
    second_order_series,
    section_energy_gap,
)
from .greedy_numeric import (
    GreedyConfig,
    cap_discrepancy,
    divergent_lambda2_example,
    fibonacci_lattice,
    generate,
    next_point,
    potential,
)
from .specfun import (
    continuous_energy,
    gamma,
    maximal_energy,
    second_order_constant,
    zeta_neg,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryRep",
    "DyadicAngle",
    "GBarResult",
    "GreedyConfig",
    "LimitReport",
    "SequenceRecord",
    "ThetaVector",
    "canonical_sequence",
    "cap_discrepancy",
    "chord",
    "continuous_energy",
    "decompose",
    "divergent_lambda2_example",
    "extremal_potential_gap",
    "fibonacci_lattice",
    "g_bar",
    "g_function",
    "g_function_dlambda",
    "gamma",
    "generate",
    "greedy_energy_exact",
    "greedy_extremal_potential",
    "kappa",
    "limit_report",
    "maximal_energy",
    "midpoint_potential",
    "next_point",
    "potential",
    "r_lambda",
    "roots_energy",
    "roots_energy_gap",
    "s_lambda",
    "s_lambda_terms",
    "second_order_constant",
    "second_order_series",
    "section_energy_gap",
    "square_identity_check",
    "subsequence_limit_lambda1",
    "theta_from_odd",
    "zeta_neg",
]
