"""Degree-product edge-sum indices on concrete graphs.

The index of a graph under a vertex function f is the sum over edges
{u, v} of f(deg(u)) * f(deg(v)). With f constant 1 on positive degrees
the index reduces to the edge count, which we track alongside every
evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphcore import Graph
from .vfunc import VertexFunction


@dataclass(frozen=True)
class IndexValue:
    value: float
    edge_count: int


def topo_index(g: Graph, f: VertexFunction) -> IndexValue:
    """Index value, summed once per unordered edge, plus the edge count."""
    if g.edge_count == 0:
        return IndexValue(0.0, 0)
    x = f.eval_array(g.degrees)
    return IndexValue(float(np.dot(x[g.eu], x[g.ev])), g.edge_count)


def topo_index_sum_form(g: Graph, f: VertexFunction) -> float:
    """Same index computed as half the sum over ordered adjacent pairs.

    Evaluated through the dense adjacency matrix (x^T A x / 2), so it is
    an independent consistency check on topo_index rather than a second
    production path. O(n^2) memory; intended for small graphs.
    """
    adj = np.zeros((g.n, g.n), dtype=np.float64)
    adj[g.eu, g.ev] = 1.0
    adj[g.ev, g.eu] = 1.0
    x = f.eval_array(g.degrees)
    return float(0.5 * (x @ adj @ x))
