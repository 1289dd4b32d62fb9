"""Exception types shared across the package."""


class TicovError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(TicovError, ValueError):
    """Invalid model parameters, function arguments, or configuration."""


class ParseError(TicovError, ValueError):
    """Malformed textual input (edge lists, function specs)."""


class BudgetError(ParameterError):
    """Enumeration request exceeds the exhaustive-search budget."""


class SeriesRefusalError(ParameterError):
    """Series evaluation refused: the function grows too fast for the
    default truncation rule and no explicit term cap was given."""


class SeriesTruncationError(TicovError, RuntimeError):
    """Series did not converge within the allowed number of terms."""
