"""Exhaustive ground truth by enumerating every labeled graph.

A graph on n vertices is a C(n,2)-bit mask over the lexicographic pair
ordering; under G(n, p) a mask with m edges has probability
p^m (1-p)^(C(n,2)-m). Expectations are exact sums over all masks,
processed in fixed-size chunks whose partial weighted sums merge by
addition, so any partitioning of the mask range gives the same result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import BudgetError, ParameterError
from .graphcore import Graph, pair_count, pair_endpoints
from .vfunc import VertexFunction

MAX_ENUM_VERTICES = 7  # 2^21 graphs
MAX_INDEPENDENCE_VERTICES = 6
_CHUNK_BITS = 16


@dataclass(frozen=True)
class EnumerationBudget:
    """Exhaustive-search request: all 2^C(n,2) labeled graphs on n
    vertices weighted under G(n, p)."""

    n: int
    p: float

    def __post_init__(self) -> None:
        if not 2 <= self.n <= MAX_ENUM_VERTICES:
            raise BudgetError(
                f"enumeration supports 2 <= n <= {MAX_ENUM_VERTICES}, got n={self.n}"
            )
        if not 0.0 < self.p <= 1.0:
            raise ParameterError(f"edge probability must lie in (0, 1], got {self.p}")

    @property
    def num_pairs(self) -> int:
        return pair_count(self.n)

    @property
    def num_graphs(self) -> int:
        return 1 << self.num_pairs


def _mask_chunks(num_graphs: int) -> Iterator[np.ndarray]:
    step = 1 << _CHUNK_BITS
    for start in range(0, num_graphs, step):
        stop = min(start + step, num_graphs)
        yield np.arange(start, stop, dtype=np.int64)


def _chunk_tables(
    masks: np.ndarray, n: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-mask edge bits, degree matrix, edge counts, and weights prep.

    Returns (bits, deg, m) with bits of shape (B, M), deg of shape (B, n),
    m of shape (B,).
    """
    num_pairs = pair_count(n)
    eu, ev = pair_endpoints(np.arange(num_pairs), n)
    bits = (masks[:, None] >> np.arange(num_pairs)) & 1
    deg = np.zeros((len(masks), n), dtype=np.int64)
    for j in range(num_pairs):
        deg[:, eu[j]] += bits[:, j]
        deg[:, ev[j]] += bits[:, j]
    m = bits.sum(axis=1)
    return bits, deg, m, np.stack([eu, ev])


def _weights(m: np.ndarray, num_pairs: int, p: float) -> np.ndarray:
    return np.power(p, m) * np.power(1.0 - p, num_pairs - m)


def oracle_expectation(budget: EnumerationBudget, statistic: Callable[[Graph], float]) -> float:
    """Exact E[statistic] over G(n, p) for an arbitrary graph statistic.

    Builds each graph object in turn; use the specialized routines below
    when the statistic is an index moment and speed matters.
    """
    num_pairs = budget.num_pairs
    parts: list[float] = []
    for mask in range(budget.num_graphs):
        idx = [j for j in range(num_pairs) if mask >> j & 1]
        g = Graph.from_pair_indices(budget.n, np.asarray(idx, dtype=np.int64))
        w = budget.p ** len(idx) * (1.0 - budget.p) ** (num_pairs - len(idx))
        parts.append(w * statistic(g))
    return math.fsum(parts)


@dataclass(frozen=True)
class IndexMomentOracle:
    e_tx: float
    e_t1: float
    e_txt1: float
    cov: float


def oracle_index_moments(budget: EnumerationBudget, f: VertexFunction) -> IndexMomentOracle:
    """Exact E[index], E[edges], E[index * edges], and their covariance,
    in one vectorized pass over all masks."""
    n = budget.n
    lookup = f.eval_array(np.arange(n))
    sum_w: list[float] = []
    sum_tx: list[float] = []
    sum_t1: list[float] = []
    sum_txt1: list[float] = []
    for masks in _mask_chunks(budget.num_graphs):
        bits, deg, m, pairs = _chunk_tables(masks, n)
        x = lookup[deg]
        tx = np.zeros(len(masks))
        for j in range(budget.num_pairs):
            tx += bits[:, j] * x[:, pairs[0, j]] * x[:, pairs[1, j]]
        w = _weights(m, budget.num_pairs, budget.p)
        sum_w.append(float(w.sum()))
        sum_tx.append(float(np.dot(w, tx)))
        sum_t1.append(float(np.dot(w, m)))
        sum_txt1.append(float(np.dot(w, tx * m)))
    total = math.fsum(sum_w)
    e_tx = math.fsum(sum_tx) / total
    e_t1 = math.fsum(sum_t1) / total
    e_txt1 = math.fsum(sum_txt1) / total
    return IndexMomentOracle(e_tx=e_tx, e_t1=e_t1, e_txt1=e_txt1, cov=e_txt1 - e_tx * e_t1)


def oracle_cov(budget: EnumerationBudget, f: VertexFunction) -> float:
    """Exact Cov(index, edge count) by enumeration."""
    return oracle_index_moments(budget, f).cov


def oracle_dfk(budget: EnumerationBudget, f: VertexFunction, k: int) -> float:
    """Exact edge-conditioned mean of f(deg(vertex 0)) given that the k
    edges {0,1}, ..., {0,k} are present.

    The enumeration filters on those edges instead of reweighting; the
    shared p^k factor cancels in the normalization.
    """
    if not 1 <= k <= budget.n - 1:
        raise ParameterError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={budget.n}")
    # pairs (0,1)..(0,k) occupy the first k linear indices
    n = budget.n
    lookup = f.eval_array(np.arange(n))
    num: list[float] = []
    den: list[float] = []
    for masks in _mask_chunks(budget.num_graphs):
        bits, deg, m, _ = _chunk_tables(masks, n)
        keep = bits[:, :k].all(axis=1)
        w = _weights(m[keep], budget.num_pairs, budget.p)
        num.append(float(np.dot(w, lookup[deg[keep, 0]])))
        den.append(float(w.sum()))
    return math.fsum(num) / math.fsum(den)


def independence_check(budget: EnumerationBudget, conditioned: bool = True) -> float:
    """Maximum deviation between the joint law of (deg(0), deg(1)) and the
    product of its marginals.

    With conditioned=True the law is restricted to graphs containing the
    edge {0, 1}, where the two degrees factorize exactly and the
    deviation is zero up to rounding. The unconditioned variant is a
    control: there the shared edge indicator couples the degrees and the
    deviation is strictly positive for 0 < p < 1.
    """
    if budget.n > MAX_INDEPENDENCE_VERTICES:
        raise BudgetError(
            f"independence check supports n <= {MAX_INDEPENDENCE_VERTICES}, got n={budget.n}"
        )
    n = budget.n
    joint = np.zeros((n, n))
    for masks in _mask_chunks(budget.num_graphs):
        bits, deg, m, _ = _chunk_tables(masks, n)
        if conditioned:
            keep = bits[:, 0] == 1  # pair index 0 is {0, 1}
        else:
            keep = np.ones(len(masks), dtype=bool)
        w = _weights(m[keep], budget.num_pairs, budget.p)
        np.add.at(joint, (deg[keep, 0], deg[keep, 1]), w)
    joint /= joint.sum()
    marginal_u = joint.sum(axis=1)
    marginal_v = joint.sum(axis=0)
    return float(np.abs(joint - np.outer(marginal_u, marginal_v)).max())
