"""Simple undirected graphs, seeded G(n, p) sampling, and edge-list I/O.

Vertices are 0-indexed integers. Unordered pairs {u, v} with u < v are
mapped to linear indices in lexicographic order: (0,1), (0,2), ...,
(0,n-1), (1,2), ...; the same ordering is used everywhere (sampling,
enumeration masks, file output).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import ParameterError, ParseError

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 step; a cheap, well-mixed 64-bit permutation."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix64(*parts: int) -> int:
    """Deterministic 64-bit hash of a sequence of integers.

    Used to derive independent sub-seeds (per sample, per sweep cell)
    from a master seed so that results never depend on scheduling.
    """
    h = 0
    for p in parts:
        h = splitmix64(h ^ (p & _MASK64))
    return h


def pair_count(n: int) -> int:
    """Number of unordered vertex pairs on n vertices."""
    return n * (n - 1) // 2


def pair_index(u: int, v: int, n: int) -> int:
    """Linear index of the pair {u, v} (u < v) in lexicographic order."""
    if not 0 <= u < v < n:
        raise ParameterError(f"invalid pair ({u}, {v}) for n={n}")
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def pair_endpoints(t: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of pair_index, vectorized: linear indices -> (u, v) arrays."""
    t = np.asarray(t, dtype=np.int64)
    b = 2 * n - 1
    u = ((b - np.sqrt(b * b - 8.0 * t)) / 2.0).astype(np.int64)
    # float sqrt can be off by one row near row boundaries; fix up exactly
    for _ in range(2):
        row_start = u * (2 * n - u - 1) // 2
        u = np.where(row_start > t, u - 1, u)
        next_start = (u + 1) * (2 * n - u - 2) // 2
        u = np.where(next_start <= t, u + 1, u)
    v = t - u * (2 * n - u - 1) // 2 + u + 1
    return u, v


@dataclass(frozen=True)
class ModelParams:
    """Random-graph law G(n, p): each unordered pair is an edge
    independently with probability p. For sparse asymptotics use
    from_alpha, which sets p = alpha / n."""

    n: int
    p: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"vertex count must be a positive integer, got {self.n}")
        if not 0.0 <= self.p <= 1.0 or math.isnan(self.p):
            raise ParameterError(f"edge probability must lie in [0, 1], got {self.p}")

    @classmethod
    def from_alpha(cls, n: int, alpha: float) -> "ModelParams":
        if alpha <= 0:
            raise ParameterError(f"alpha must be positive, got {alpha}")
        if alpha > n:
            raise ParameterError(f"alpha={alpha} exceeds n={n} (p would exceed 1)")
        return cls(n, alpha / n)

    @classmethod
    def from_p(cls, n: int, p: float) -> "ModelParams":
        return cls(n, p)

    @property
    def alpha(self) -> float:
        return self.p * self.n

    @property
    def expected_edges(self) -> float:
        return pair_count(self.n) * self.p


class Graph:
    """Immutable simple undirected labeled graph.

    Edges are stored as parallel arrays (eu, ev) with eu < ev, sorted by
    linear pair index; the degree sequence is computed once at
    construction. Safe to share across threads.
    """

    __slots__ = ("n", "eu", "ev", "_degrees")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if not isinstance(n, int) or n < 0:
            raise ParameterError(f"vertex count must be a nonnegative integer, got {n}")
        seen: set[int] = set()
        idx = []
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop ({u}, {v}) not allowed")
            if u > v:
                u, v = v, u
            if not 0 <= u < v < n:
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            t = pair_index(u, v, n)
            if t in seen:
                raise ParameterError(f"duplicate edge ({u}, {v})")
            seen.add(t)
            idx.append(t)
        idx_arr = np.sort(np.asarray(idx, dtype=np.int64))
        self._init_from_indices(n, idx_arr)

    def _init_from_indices(self, n: int, idx_sorted: np.ndarray) -> None:
        if len(idx_sorted):
            eu, ev = pair_endpoints(idx_sorted, n)
        else:
            eu = ev = np.empty(0, dtype=np.int64)
        deg = np.bincount(eu, minlength=n) + np.bincount(ev, minlength=n)
        for arr in (eu, ev, deg):
            arr.setflags(write=False)
        self.n = n
        self.eu = eu
        self.ev = ev
        self._degrees = deg

    @classmethod
    def from_pair_indices(cls, n: int, idx_sorted: np.ndarray) -> "Graph":
        """Fast construction from sorted, validated linear pair indices."""
        g = cls.__new__(cls)
        g._init_from_indices(n, np.asarray(idx_sorted, dtype=np.int64))
        return g

    @property
    def edge_count(self) -> int:
        return int(len(self.eu))

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in zip(self.eu.tolist(), self.ev.tolist()):
            yield (u, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and len(self.eu) == len(other.eu)
            and bool(np.array_equal(self.eu, other.eu))
            and bool(np.array_equal(self.ev, other.ev))
        )

    def __hash__(self) -> int:
        return hash((self.n, self.eu.tobytes(), self.ev.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def degrees(g: Graph) -> np.ndarray:
    """Degree sequence of g; sums to twice the edge count."""
    return g.degrees


def _sample_pair_indices(rng: np.random.Generator, m_pairs: int, p: float) -> np.ndarray:
    """Indices of pairs kept by independent Bernoulli(p) trials.

    Uses geometric gaps between successes, so the cost is proportional
    to the number of edges drawn rather than to the number of pairs.
    """
    if m_pairs == 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(m_pairs, dtype=np.int64)
    chunks = []
    base = 0
    while True:
        need = int((m_pairs - base) * p * 1.2) + 16
        gaps = rng.geometric(p, size=need)
        pos = base - 1 + np.cumsum(gaps)
        chunks.append(pos)
        if pos[-1] >= m_pairs:
            break
        base = int(pos[-1]) + 1
    pos = np.concatenate(chunks) if len(chunks) > 1 else chunks[0]
    return pos[pos < m_pairs]


def sample_gnp(params: ModelParams, seed: int) -> Graph:
    """Draw one graph from G(n, p).

    The graph is a pure function of (params, seed): rerunning with the
    same arguments reproduces the identical edge set regardless of
    platform thread or worker counts.
    """
    rng = np.random.default_rng(seed & _MASK64)
    idx = _sample_pair_indices(rng, pair_count(params.n), params.p)
    return Graph.from_pair_indices(params.n, idx)


def read_edge_list(lines: Iterable[str] | TextIO) -> Graph:
    """Parse the edge-list text format.

    First significant line: "n=<int>". Each following line: "<u> <v>",
    whitespace-separated 0-indexed endpoints, one line per undirected
    edge. Lines starting with '#' and blank lines are ignored.
    """
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise ParseError(f"line {lineno}: expected header 'n=<int>', got {line!r}")
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(f"line {lineno}: invalid vertex count {line[2:]!r}") from None
            if n < 0:
                raise ParseError(f"line {lineno}: vertex count must be nonnegative")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if u == v:
            raise ParseError(f"line {lineno}: self-loop {u} {v}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex index out of range for n={n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    if n is None:
        raise ParseError("line 1: missing header 'n=<int>'")
    return Graph(n, edges)


def write_edge_list(g: Graph) -> str:
    """Serialize g in the edge-list text format; read_edge_list inverts it."""
    out = [f"n={g.n}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
