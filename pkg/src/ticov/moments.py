"""Closed-form moments of edge-sum indices under G(n, p).

The central quantity is the edge-conditioned mean

    d_f(k) = E[f(deg(v)) | v has k specified incident edges]
           = E[f(k + Binomial(n - k - 1, p))],

which drives the expected index, the index/edge-count product moment,
their covariance, and the large-n limit d_f(k) -> E[f(k + Poisson(alpha))]
for p = alpha / n. Everything here is deterministic and pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from .errors import ParameterError, SeriesRefusalError, SeriesTruncationError
from .graphcore import ModelParams
from .vfunc import VertexFunction

_DEFAULT_MAX_TERMS = 10_000


@dataclass(frozen=True)
class SeriesControl:
    """Truncation control for the Poisson-limit series.

    tol is both the absolute tail tolerance and the threshold under
    which the limiting d_f(1) is declared zero. max_terms left at None
    means "default cap, not explicitly chosen": functions without a
    growth certificate are then refused rather than silently truncated.
    """

    tol: float = 1e-12
    max_terms: int | None = None

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if self.max_terms is not None and self.max_terms < 1:
            raise ParameterError(f"max_terms must be >= 1, got {self.max_terms}")

    @property
    def term_cap(self) -> int:
        return self.max_terms if self.max_terms is not None else _DEFAULT_MAX_TERMS


def binomial_weights(m: int, p: float) -> np.ndarray:
    """Binomial(m, p) pmf over 0..m, stable for m up to ~10^6.

    The pmf is anchored in log space at the mode (one gammaln triple,
    whose error is a constant factor across all weights and cancels in
    every normalized mean) and filled outward with exact log ratios, so
    relative accuracy does not degrade with m the way independent
    gammaln evaluations do.
    """
    if m < 0:
        raise ParameterError(f"binomial size must be nonnegative, got {m}")
    if m == 0:
        return np.ones(1)
    if p <= 0.0:
        w = np.zeros(m + 1)
        w[0] = 1.0
        return w
    if p >= 1.0:
        w = np.zeros(m + 1)
        w[m] = 1.0
        return w
    jmode = min(max(int((m + 1) * p), 0), m)
    j = np.arange(m, dtype=np.float64)
    # log of w_{j+1} / w_j
    logr = np.log((m - j) * p) - np.log((j + 1) * (1.0 - p))
    logw = np.zeros(m + 1)
    logw[jmode + 1 :] = np.cumsum(logr[jmode:])
    if jmode > 0:
        logw[:jmode] = -np.cumsum(logr[:jmode][::-1])[::-1]
    anchor = (
        gammaln(m + 1)
        - gammaln(jmode + 1)
        - gammaln(m - jmode + 1)
        + jmode * math.log(p)
        + (m - jmode) * math.log1p(-p)
    )
    logw += anchor
    return np.exp(logw)  # far tails underflow to exact zeros


def dfk_exact(f: VertexFunction, params: ModelParams, k: int) -> float:
    """Edge-conditioned mean d_f(k) at finite n, via the binomial law.

    Shifted functions are reduced by linearity of expectation,
    d_{f-c}(k) = d_f(k) - c, which keeps the decorrelation identity
    exact in floating point (shifting f by d_f(1) yields exactly 0).
    """
    n = params.n
    if not 1 <= k <= n - 1:
        raise ParameterError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    if f.kind == "shifted":
        assert f.base is not None
        return dfk_exact(f.base, params, k) - f.c
    m = n - k - 1
    w = binomial_weights(m, params.p)
    fv = f.eval_array(k + np.arange(m + 1))
    return math.fsum(fv * w) / math.fsum(w)


def dfk_poisson(f: VertexFunction, alpha: float, k: int, ctl: SeriesControl | None = None) -> float:
    """Limiting edge-conditioned mean E[f(k + Poisson(alpha))].

    The series sum_j f(k+j) alpha^j e^{-alpha} / j! is truncated once
    j > alpha and two consecutive terms fall below tol * (1 + |partial|);
    past the mode the terms of any linearly bounded f decay faster than
    a geometric with ratio alpha/j, so the discarded tail is below tol.
    Functions without a growth certificate are refused unless the caller
    explicitly sets max_terms. Shifted functions reduce by linearity.
    """
    ctl = ctl or SeriesControl()
    if alpha <= 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if f.kind == "shifted":
        assert f.base is not None
        return dfk_poisson(f.base, alpha, k, ctl) - f.c
    if not f.growth_bound and ctl.max_terms is None:
        raise SeriesRefusalError(
            f"function {f.spec()!r} has no linear growth certificate; "
            "set an explicit max_terms to force truncation"
        )
    weight = math.exp(-alpha)
    total = 0.0
    small_run = 0
    term = 0.0
    for j in range(ctl.term_cap + 1):
        term = f.eval(k + j) * weight
        total += term
        if j > alpha and abs(term) < ctl.tol * (1.0 + abs(total)):
            small_run += 1
            if small_run >= 2:
                return total
        else:
            small_run = 0
        weight *= alpha / (j + 1)
    raise SeriesTruncationError(
        f"series for {f.spec()!r} did not converge within {ctl.term_cap} terms "
        f"(last term magnitude {abs(term):.3e})"
    )


def expected_index(f: VertexFunction, params: ModelParams) -> float:
    """E[index] = d_f(1)^2 * E[edges]."""
    _require_pair(params)
    d1 = dfk_exact(f, params, 1)
    return d1 * d1 * params.expected_edges


def expected_product(f: VertexFunction, params: ModelParams) -> float:
    """E[index * edge count], split over pair-of-edges overlap classes:

    [ d1^2 C(n-2,2) p  +  2 d1 d2 (n-2) p  +  d1^2 ] * E[edges].
    """
    _require_pair(params)
    n, p = params.n, params.p
    d1 = dfk_exact(f, params, 1)
    d2 = _d2_or_zero(f, params)
    bracket = d1 * d1 * math.comb(n - 2, 2) * p + 2.0 * d1 * d2 * (n - 2) * p + d1 * d1
    return bracket * params.expected_edges


def covariance_exact(f: VertexFunction, params: ModelParams) -> float:
    """Cov(index, edge count) at finite n.

    Algebraically equal to expected_product - expected_index * E[edges];
    evaluated through the collapsed bracket

        [ d1^2 (1 + (3-2n) p) + 2 d1 d2 (n-2) p ] * E[edges],

    grouped as d1^2 + p * (integer-weighted terms) so that f constant on
    positive degrees yields E[edges] * (1 - p) to the last bit.
    """
    _require_pair(params)
    n, p = params.n, params.p
    d1 = dfk_exact(f, params, 1)
    d2 = _d2_or_zero(f, params)
    inner = d1 * d1 * (3 - 2 * n) + 2.0 * d1 * d2 * (n - 2)
    bracket = d1 * d1 + p * inner
    return bracket * params.expected_edges


def covariance_asymptotic_coeff(
    f: VertexFunction, alpha: float, ctl: SeriesControl | None = None
) -> float | None:
    """Large-n covariance per expected edge: d1^2 (1 + 2 alpha (d2/d1 - 1))
    with d1, d2 the Poisson-limit means; None marks the zero branch
    (|d1| <= tol), where the covariance vanishes identically."""
    ctl = ctl or SeriesControl()
    d1 = dfk_poisson(f, alpha, 1, ctl)
    if abs(d1) <= ctl.tol:
        return None
    d2 = dfk_poisson(f, alpha, 2, ctl)
    return d1 * d1 * (1.0 + 2.0 * alpha * (d2 / d1 - 1.0))


class ZeroCovResult(NamedTuple):
    zero: bool
    d1: float  # witness: the limiting d_f(1)


def zero_cov_test(f: VertexFunction, alpha: float, ctl: SeriesControl | None = None) -> ZeroCovResult:
    """Whether the limiting covariance with the edge count vanishes.

    True exactly when the limiting d_f(1) is zero (within tol); the
    witness value is returned either way.
    """
    ctl = ctl or SeriesControl()
    d1 = dfk_poisson(f, alpha, 1, ctl)
    return ZeroCovResult(abs(d1) <= ctl.tol, d1)


def cov0_coefficients(f: VertexFunction, j_max: int) -> list[float]:
    """Power-series coefficients whose simultaneous vanishing forces f = 0.

    c_0 = f(1)/2 and c_j = f(1+j) (1 + 1/(2j)) - f(j) for j >= 1. All of
    c_0..c_{j_max} are zero iff f vanishes on degrees 1..j_max+1: c_0
    pins f(1), and each c_j then pins f(1+j) by forward substitution.
    """
    if j_max < 0:
        raise ParameterError(f"j_max must be >= 0, got {j_max}")
    coeffs = [0.5 * f.eval(1)]
    for j in range(1, j_max + 1):
        coeffs.append(f.eval(1 + j) * (1.0 + 0.5 / j) - f.eval(j))
    return coeffs


def s_counts(n: int) -> tuple[int, int, int]:
    """Counts of ordered pairs of vertex pairs sharing 0, 1, or 2 vertices:
    (C(n,2) C(n-2,2), 6 C(n,3), C(n,2)); they sum to C(n,2)^2."""
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    return (
        math.comb(n, 2) * math.comb(n - 2, 2),
        6 * math.comb(n, 3),
        math.comb(n, 2),
    )


@dataclass(frozen=True)
class MomentReport:
    """Closed-form summary for one (f, n, p) combination.

    d2 is NaN when n = 2 (no vertex can have two specified incident
    edges); the formulas that would use it carry a vanishing factor
    there. cov_asymptotic_coeff is the large-n bracket per expected
    edge, 0.0 on the zero branch.
    """

    d1: float
    d2: float
    expected_edges: float
    e_tx: float
    e_txt1: float
    cov_exact: float
    cov_asymptotic_coeff: float


def moment_report(
    f: VertexFunction, params: ModelParams, ctl: SeriesControl | None = None
) -> MomentReport:
    """Evaluate every closed form at once."""
    _require_pair(params)
    ctl = ctl or SeriesControl()
    d1 = dfk_exact(f, params, 1)
    d2 = dfk_exact(f, params, 2) if params.n >= 3 else math.nan
    # p = 0 has no edges and identically zero covariance; the limit
    # series is only defined for positive alpha
    coeff = covariance_asymptotic_coeff(f, params.alpha, ctl) if params.p > 0 else 0.0
    return MomentReport(
        d1=d1,
        d2=d2,
        expected_edges=params.expected_edges,
        e_tx=expected_index(f, params),
        e_txt1=expected_product(f, params),
        cov_exact=covariance_exact(f, params),
        cov_asymptotic_coeff=0.0 if coeff is None else coeff,
    )


def _d2_or_zero(f: VertexFunction, params: ModelParams) -> float:
    # at n = 2 the d2 term carries a factor (n - 2) = 0, so any finite
    # placeholder is equivalent; 0.0 keeps the arithmetic clean
    return dfk_exact(f, params, 2) if params.n >= 3 else 0.0


def _require_pair(params: ModelParams) -> None:
    if params.n < 2:
        raise ParameterError(f"need at least two vertices, got n={params.n}")
