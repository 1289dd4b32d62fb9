"""Vertex-degree functions: builtins, tables, and the decorrelating shift.

A vertex function f maps a degree to a real value with the convention
f(0) = 0, so isolated vertices never contribute. Functions carry a
growth certificate (|f(d)| <= C * d for d >= 1) when one is known;
series evaluators rely on it to bound truncation tails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ParseError

_KINDS = ("constant", "identity", "power", "table", "shifted")


@dataclass(frozen=True)
class VertexFunction:
    kind: str
    c: float = 0.0  # constant level, or shift amount for "shifted"
    exponent: float = 1.0  # "power" only
    values: tuple[float, ...] = ()  # "table" entries for degrees 1..len(values)
    base: "VertexFunction | None" = None  # "shifted" only

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ParameterError(f"unknown vertex-function kind {self.kind!r}")
        if self.kind == "table" and not self.values:
            raise ParameterError("table function needs at least one value")
        if self.kind == "shifted" and self.base is None:
            raise ParameterError("shifted function needs a base function")

    # -- evaluation ----------------------------------------------------

    def eval(self, d: int) -> float:
        """Value at degree d; 0.0 at d=0 for every kind."""
        if d < 0:
            raise ParameterError(f"degree must be nonnegative, got {d}")
        if d == 0:
            return 0.0
        if self.kind == "constant":
            return self.c
        if self.kind == "identity":
            return float(d)
        if self.kind == "power":
            # np.power, not **: keeps scalar and vectorized evaluation
            # bit-identical (libm pow rounds the last bit differently)
            return float(np.power(float(d), self.exponent))
        if self.kind == "table":
            k = len(self.values)
            if d <= k:
                return self.values[d - 1]
            return self.values[-1] + self._table_slope() * (d - k)
        assert self.base is not None
        return self.base.eval(d) - self.c

    def eval_array(self, d: np.ndarray) -> np.ndarray:
        """Vectorized eval over an integer degree array."""
        d = np.asarray(d)
        nz = d > 0
        out = np.zeros(d.shape, dtype=np.float64)
        if self.kind == "constant":
            out[nz] = self.c
        elif self.kind == "identity":
            out[nz] = d[nz]
        elif self.kind == "power":
            out[nz] = np.power(d[nz].astype(np.float64), self.exponent)
        elif self.kind == "table":
            k = len(self.values)
            tab = np.asarray(self.values, dtype=np.float64)
            dn = d[nz]
            inside = dn <= k
            vals = np.empty(dn.shape, dtype=np.float64)
            vals[inside] = tab[dn[inside] - 1]
            vals[~inside] = tab[-1] + self._table_slope() * (dn[~inside] - k)
            out[nz] = vals
        else:
            assert self.base is not None
            out[nz] = self.base.eval_array(d[nz]) - self.c
        return out

    def _table_slope(self) -> float:
        # extend linearly past the stored range; a 1-entry table stays flat
        return self.values[-1] - self.values[-2] if len(self.values) >= 2 else 0.0

    # -- growth certificate --------------------------------------------

    @property
    def growth_constant(self) -> float | None:
        """C with |f(d)| <= C*d for all d >= 1, or None if f is not O(x)."""
        if self.kind == "constant":
            return abs(self.c)
        if self.kind == "identity":
            return 1.0
        if self.kind == "power":
            # d**lam <= d for d >= 1 iff lam <= 1
            return 1.0 if self.exponent <= 1.0 else None
        if self.kind == "table":
            stored = max(abs(v) / d for d, v in enumerate(self.values, start=1))
            return max(stored, abs(self._table_slope()) + abs(self.values[-1]))
        assert self.base is not None
        base_c = self.base.growth_constant
        return None if base_c is None else base_c + abs(self.c)

    @property
    def growth_bound(self) -> bool:
        return self.growth_constant is not None

    # -- spec-string round trip ----------------------------------------

    def spec(self) -> str:
        """Canonical command-line syntax for this function."""
        if self.kind == "constant":
            return f"const:{self.c!r}"
        if self.kind == "identity":
            return "id"
        if self.kind == "power":
            return "randic" if self.exponent == -0.5 else f"pow:{self.exponent!r}"
        if self.kind == "table":
            return "table:" + ",".join(repr(v) for v in self.values)
        assert self.base is not None
        return f"shift:{self.base.spec()}:{self.c!r}"

    def __str__(self) -> str:
        return self.spec()


def constant(c: float) -> VertexFunction:
    """f(d) = c for d >= 1 (and 0 at d = 0)."""
    return VertexFunction("constant", c=float(c))


def identity() -> VertexFunction:
    """f(d) = d."""
    return VertexFunction("identity")


def power(exponent: float) -> VertexFunction:
    """f(d) = d**exponent for d >= 1; exponent -1/2 is the connectivity weight."""
    return VertexFunction("power", exponent=float(exponent))


def randic() -> VertexFunction:
    """Connectivity weight f(d) = d**(-1/2)."""
    return power(-0.5)


def table(values) -> VertexFunction:
    """Tabulated f: values[i] is f(i + 1); extended linearly past the table."""
    return VertexFunction("table", values=tuple(float(v) for v in values))


def shift(f: VertexFunction, c: float) -> VertexFunction:
    """g with g(d) = f(d) - c for d >= 1 and g(0) = 0.

    Shifting by the edge-conditioned mean of f makes the resulting index
    exactly uncorrelated with the edge count.
    """
    return VertexFunction("shifted", c=float(c), base=f)


def parse_function(spec: str) -> VertexFunction:
    """Parse command-line function syntax.

    Accepted forms: "const:<c>", "id", "randic", "pow:<exponent>",
    "table:<v1,v2,...>" (index starts at degree 1), and
    "shift:<inner>:<c>" where <inner> is any of these forms.
    """
    s = spec.strip()
    if s == "id":
        return identity()
    if s == "randic":
        return randic()
    if s.startswith("const:"):
        return constant(_parse_float(s[6:], spec))
    if s.startswith("pow:"):
        return power(_parse_float(s[4:], spec))
    if s.startswith("table:"):
        body = s[6:]
        if not body:
            raise ParseError(f"empty table in function spec {spec!r}")
        return table(_parse_float(v, spec) for v in body.split(","))
    if s.startswith("shift:"):
        body = s[6:]
        inner, sep, amount = body.rpartition(":")
        if not sep or not inner:
            raise ParseError(f"shift needs 'shift:<inner>:<c>', got {spec!r}")
        return shift(parse_function(inner), _parse_float(amount, spec))
    raise ParseError(f"unrecognized function spec {spec!r}")


def _parse_float(text: str, spec: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"invalid number {text!r} in function spec {spec!r}") from None
