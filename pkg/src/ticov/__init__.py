"""Degree-based edge-sum indices on random graphs.

Closed-form expectations and covariances of indices of the form
sum over edges of f(deg(u)) * f(deg(v)) under G(n, p), checked three
ways against each other: analytic formulas, exhaustive enumeration of
all labeled graphs at small n, and seeded Monte Carlo at large n.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetError,
    ParameterError,
    ParseError,
    SeriesRefusalError,
    SeriesTruncationError,
    TicovError,
)
from .graphcore import (
    Graph,
    ModelParams,
    degrees,
    read_edge_list,
    sample_gnp,
    write_edge_list,
)
from .indices import IndexValue, topo_index, topo_index_sum_form
from .moments import (
    MomentReport,
    SeriesControl,
    ZeroCovResult,
    cov0_coefficients,
    covariance_asymptotic_coeff,
    covariance_exact,
    dfk_exact,
    dfk_poisson,
    expected_index,
    expected_product,
    moment_report,
    s_counts,
    zero_cov_test,
)
from .montecarlo import MCConfig, MCResult, SweepRow, run, sweep
from .oracle import (
    EnumerationBudget,
    independence_check,
    oracle_cov,
    oracle_dfk,
    oracle_expectation,
    oracle_index_moments,
)
from .vfunc import (
    VertexFunction,
    constant,
    identity,
    parse_function,
    power,
    randic,
    shift,
    table,
)

__all__ = [
    "BudgetError",
    "EnumerationBudget",
    "Graph",
    "IndexValue",
    "MCConfig",
    "MCResult",
    "ModelParams",
    "MomentReport",
    "ParameterError",
    "ParseError",
    "SeriesControl",
    "SeriesRefusalError",
    "SeriesTruncationError",
    "SweepRow",
    "TicovError",
    "VertexFunction",
    "ZeroCovResult",
    "constant",
    "cov0_coefficients",
    "covariance_asymptotic_coeff",
    "covariance_exact",
    "degrees",
    "dfk_exact",
    "dfk_poisson",
    "expected_index",
    "expected_product",
    "identity",
    "independence_check",
    "moment_report",
    "oracle_cov",
    "oracle_dfk",
    "oracle_expectation",
    "oracle_index_moments",
    "parse_function",
    "power",
    "randic",
    "read_edge_list",
    "run",
    "s_counts",
    "sample_gnp",
    "shift",
    "sweep",
    "table",
    "topo_index",
    "topo_index_sum_form",
    "write_edge_list",
    "zero_cov_test",
]
