"""Exception types shared across the package."""


class ElastikError(Exception):
    """Base class for all elastik errors."""


class ParseError(ElastikError):
    """A malformed field in a dataset file.

    Carries the 1-based ``line`` and ``column`` (field index) of the offending
    token so callers can point at the exact spot.
    """

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmptyDatasetError(ElastikError):
    """A dataset source contained no series."""


class DegenerateInputError(ElastikError, ValueError):
    """Series too short for the requested transform."""


class SpecError(ElastikError, ValueError):
    """Invalid or incomplete distance parameterization."""


class DimensionError(ElastikError, ValueError):
    """Mismatched or unusable input lengths."""


class SearchError(ElastikError, ValueError):
    """Invalid search input (e.g. empty candidate set)."""
