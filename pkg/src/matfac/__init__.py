"""Factor-count estimation for matrix-variate time series.

Determines the number of row and column factors in two-way factor
models ``Y_t = R F_t C' + E_t`` using whiteness-based ratio statistics
(max-type MR, sum-type SR) and the eigenvalue-ratio baseline (ER), in
one-step (raw series) and two-step (transformed model) variants.
"""

from .dgp import DgpConfig, SimulationResult, replication_seed, simulate
from .estimation import (
    COL,
    METHODS,
    MODES,
    ONE_STEP,
    ROW,
    TWO_STEP,
    AutocovStack,
    EstimationResult,
    FactorCountResult,
    LagParams,
    SideEstimate,
    WhitenessCurves,
    autocov,
    autocov_stack,
    er_estimator,
    estimate,
    estimate_one_step,
    estimate_two_step,
    loading_basis,
    m_matrix,
    mr_estimator,
    project_columns,
    sr_estimator,
    transpose_series,
    whiteness_curves,
)
from .evaluation import (
    CvReport,
    McCellConfig,
    McReport,
    cross_validate,
    cv_rss,
    fit_loadings,
    run_monte_carlo,
)
from .exceptions import ConfigError, ParseError, ShapeError, ValidationError
from .linalg import EigenDecomposition, eig_sym, matmul

__version__ = "0.1.0"

__all__ = [
    "AutocovStack",
    "COL",
    "ConfigError",
    "CvReport",
    "DgpConfig",
    "EigenDecomposition",
    "EstimationResult",
    "FactorCountResult",
    "LagParams",
    "METHODS",
    "MODES",
    "McCellConfig",
    "McReport",
    "ONE_STEP",
    "ParseError",
    "ROW",
    "ShapeError",
    "SideEstimate",
    "SimulationResult",
    "TWO_STEP",
    "ValidationError",
    "WhitenessCurves",
    "autocov",
    "autocov_stack",
    "cross_validate",
    "cv_rss",
    "eig_sym",
    "er_estimator",
    "estimate",
    "estimate_one_step",
    "estimate_two_step",
    "fit_loadings",
    "loading_basis",
    "m_matrix",
    "matmul",
    "mr_estimator",
    "project_columns",
    "replication_seed",
    "run_monte_carlo",
    "simulate",
    "sr_estimator",
    "transpose_series",
    "whiteness_curves",
]
