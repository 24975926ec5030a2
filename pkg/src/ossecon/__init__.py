"""Entry-equilibrium model of the open-source software ecosystem.

Closed-form solves, independent numerical and Monte Carlo cross-checks,
tail calibration from usage data, and a batch CLI for counterfactuals
around AI-mediated coding.
"""

from .calibration import (
    CsvIngest,
    TailFit,
    ThetaIdentification,
    binned_log_rank_fit,
    generate_synthetic_repo_counts,
    identify_theta,
    implied_gamma,
    ingest_values_csv,
)
from .mc import (
    ChoiceSimResult,
    DegenerateMarketError,
    MarketConvergenceError,
    MarketSimResult,
    MarketSimSettings,
    RngSpec,
    frechet_scale,
    sample_frechet,
    sample_pareto,
    simulate_market,
    simulate_package_choice,
    simulate_usage_nest,
)
from .model import (
    BusinessModel,
    CounterfactualRatios,
    DerivedConstants,
    EntryElasticities,
    Equilibrium,
    ModelParams,
    NonInteriorEquilibriumError,
    Scenario,
    SustainabilityChecks,
    business_model_pi_ratio,
    derived_constants,
    developer_payoff,
    development_cost,
    entry_elasticities,
    entry_mass,
    equilibrium_from_mass,
    expected_entry_payoff,
    lambda_agg,
    long_run_ratios,
    min_monetization,
    short_run_ratios,
    solve_baseline,
    solve_scenario,
    sustainability_checks,
    utility_multiplier,
    vibe_share,
    welfare_and_quality,
    zeta_for_share,
)
from .solvers import (
    ConvergenceError,
    FirstBestResult,
    SolverSettings,
    fd_elasticities,
    first_best,
    free_entry_fixed_point,
    welfare_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "ModelParams",
    "DerivedConstants",
    "Equilibrium",
    "CounterfactualRatios",
    "BusinessModel",
    "SustainabilityChecks",
    "EntryElasticities",
    "Scenario",
    "NonInteriorEquilibriumError",
    "lambda_agg",
    "derived_constants",
    "vibe_share",
    "zeta_for_share",
    "utility_multiplier",
    "entry_mass",
    "development_cost",
    "equilibrium_from_mass",
    "solve_baseline",
    "solve_scenario",
    "developer_payoff",
    "expected_entry_payoff",
    "entry_elasticities",
    "welfare_and_quality",
    "short_run_ratios",
    "long_run_ratios",
    "min_monetization",
    "business_model_pi_ratio",
    "sustainability_checks",
    # solvers
    "SolverSettings",
    "FirstBestResult",
    "ConvergenceError",
    "free_entry_fixed_point",
    "welfare_coefficients",
    "first_best",
    "fd_elasticities",
    # mc
    "RngSpec",
    "ChoiceSimResult",
    "MarketSimSettings",
    "MarketSimResult",
    "MarketConvergenceError",
    "DegenerateMarketError",
    "frechet_scale",
    "sample_frechet",
    "sample_pareto",
    "simulate_package_choice",
    "simulate_usage_nest",
    "simulate_market",
    # calibration
    "TailFit",
    "ThetaIdentification",
    "CsvIngest",
    "binned_log_rank_fit",
    "implied_gamma",
    "identify_theta",
    "generate_synthetic_repo_counts",
    "ingest_values_csv",
]
