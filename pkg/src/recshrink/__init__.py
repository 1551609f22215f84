"""Pre-test and shrinkage estimation of exponential scale parameters from
upper record values: exact risk analysis and minimax-regret tuning of the
test level and shrinkage coefficient, validated against a seeded Monte
Carlo oracle."""

from .estimators import (
    EstimationInput,
    Target,
    TestDecision,
    critical_values,
    equal_scale_test,
    pooled,
    preliminary_test,
    shrinkage,
)
from .minimax import (
    RegretSolution,
    SearchError,
    TableCase,
    TableCell,
    delta_intersections,
    generate_tables,
    inf_k_risk,
    optimal_alpha,
    optimal_k,
    pooling_region,
    pt_risk_crossings,
    regret_pt,
    regret_shrink,
    sup_regret_pt,
    sup_regret_shrink,
)
from .records import (
    DesignPair,
    RecordSample,
    Variant,
    extract_upper_records,
    mle_scale,
    sample_exponential_records,
)
from .risk import (
    BoundConvention,
    DEFAULT_CONVENTION,
    IntegrationBounds,
    RiskParams,
    boundary_risks,
    d_bounds,
    pooled_risk_quadratic,
    pt_moments,
    pt_risk,
    risk_k_coefficients,
    shrink_moments,
    shrink_risk,
    shrink_risk_grid,
)
from .sim import (
    McReport,
    McRow,
    SimConfig,
    ValidationCell,
    convention_validation,
    mc_compare,
    mc_oracle_risk,
)
from .special import (
    f_quantile,
    inv_reg_inc_beta,
    log_beta,
    reg_inc_beta,
    reg_inc_beta_grid,
)

__all__ = [
    "BoundConvention",
    "DEFAULT_CONVENTION",
    "DesignPair",
    "EstimationInput",
    "IntegrationBounds",
    "McReport",
    "McRow",
    "RecordSample",
    "RegretSolution",
    "RiskParams",
    "SearchError",
    "SimConfig",
    "TableCase",
    "TableCell",
    "Target",
    "TestDecision",
    "ValidationCell",
    "Variant",
    "boundary_risks",
    "convention_validation",
    "critical_values",
    "d_bounds",
    "delta_intersections",
    "equal_scale_test",
    "extract_upper_records",
    "f_quantile",
    "generate_tables",
    "inf_k_risk",
    "inv_reg_inc_beta",
    "log_beta",
    "mc_compare",
    "mc_oracle_risk",
    "mle_scale",
    "optimal_alpha",
    "optimal_k",
    "pooled",
    "pooled_risk_quadratic",
    "pooling_region",
    "preliminary_test",
    "pt_moments",
    "pt_risk",
    "pt_risk_crossings",
    "reg_inc_beta",
    "reg_inc_beta_grid",
    "regret_pt",
    "regret_shrink",
    "risk_k_coefficients",
    "sample_exponential_records",
    "shrink_moments",
    "shrink_risk",
    "shrink_risk_grid",
    "shrinkage",
    "sup_regret_pt",
    "sup_regret_shrink",
]

__version__ = "0.1.0"
