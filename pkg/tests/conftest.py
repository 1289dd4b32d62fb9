"""Shared strategies and fixtures."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from ticov import Graph, constant, identity, randic, shift, table
from ticov.graphcore import pair_count

# the function set exercised by cross-validation tests: every builtin
# kind, a table that runs past its stored range, and a shifted function
BUILTIN_FUNCTIONS = [
    constant(1.0),
    identity(),
    randic(),
    table([1.0, 2.0, 1.5]),
    shift(identity(), 0.5),
]


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    m = pair_count(n)
    if m == 0:
        return Graph(n, [])
    idx = draw(st.sets(st.integers(0, m - 1)))
    return Graph.from_pair_indices(n, np.sort(np.fromiter(idx, dtype=np.int64, count=len(idx))))


@st.composite
def vertex_functions(draw):
    kind = draw(st.integers(0, 4))
    finite = st.floats(-4.0, 4.0, allow_nan=False)
    if kind == 0:
        return constant(draw(finite))
    if kind == 1:
        return identity()
    if kind == 2:
        return randic()
    if kind == 3:
        vals = draw(st.lists(finite, min_size=1, max_size=6))
        return table(vals)
    return shift(identity(), draw(finite))
