"""Guesswork of strings observed through erasure channels.

How many guesses does a listener need to reconstruct the erased part of
a string, knowing the source statistics and the erased positions?  This
package computes the asymptotic answer (entropies, scaled CGFs, rate
functions, growth rates, the subordination composition) and the exact
finite-length answer (type-class ranking, exact moments, Monte-Carlo
simulation), and emits the datasets behind the three standard figures.
"""

__version__ = "0.1.0"

from .approx import ApproxComparison, approx_pmf, approx_subordinated_pmf, compare_exact_vs_approx
from .figures import FigureDataset, build_figure_dataset, emit_figure_data
from .noise import (
    BernoulliIID,
    Deterministic,
    ErasureCountPmf,
    MarkovTwoState,
    NoiseModel,
    parse_channel,
)
from .numerics import (
    CurveGrid,
    legendre_conjugate,
    log_sum_exp,
    maximize_concave_1d,
    perron_eigenvalue_2x2,
)
from .oracle import (
    EnumerationSizeError,
    GuessworkDistribution,
    SimulationReport,
    TypeClass,
    exact_guesswork_moment,
    exact_mean_log_guesswork,
    exact_subordinated_moment,
    guesswork_distribution,
    rank_bruteforce,
    rank_typeclass,
    simulate_attack,
)
from .source import ScgfBranchPoint, SourceDistribution, parse_probs, scgf_curve
from .subordination import (
    ChannelComparison,
    GrowthRates,
    compare_channels,
    growth_rates,
    rate_function_curves,
    subordinated_rate_dual,
    subordinated_rate_inf,
    subordinated_scgf,
)

__all__ = [
    "ApproxComparison",
    "BernoulliIID",
    "ChannelComparison",
    "CurveGrid",
    "Deterministic",
    "EnumerationSizeError",
    "ErasureCountPmf",
    "FigureDataset",
    "GrowthRates",
    "GuessworkDistribution",
    "MarkovTwoState",
    "NoiseModel",
    "ScgfBranchPoint",
    "SimulationReport",
    "SourceDistribution",
    "TypeClass",
    "approx_pmf",
    "approx_subordinated_pmf",
    "build_figure_dataset",
    "compare_channels",
    "compare_exact_vs_approx",
    "emit_figure_data",
    "exact_guesswork_moment",
    "exact_mean_log_guesswork",
    "exact_subordinated_moment",
    "growth_rates",
    "guesswork_distribution",
    "legendre_conjugate",
    "log_sum_exp",
    "maximize_concave_1d",
    "parse_channel",
    "parse_probs",
    "perron_eigenvalue_2x2",
    "rank_bruteforce",
    "rank_typeclass",
    "rate_function_curves",
    "scgf_curve",
    "simulate_attack",
    "subordinated_rate_dual",
    "subordinated_rate_inf",
    "subordinated_scgf",
]
