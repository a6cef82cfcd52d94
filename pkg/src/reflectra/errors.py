"""Error types shared across the package."""


class ReflectraError(Exception):
    """Base class for all library errors."""


class ParameterError(ReflectraError, ValueError):
    """Invalid parameters or malformed input text."""


class SizeLimitError(ReflectraError):
    """A computation would exceed a configured size cap."""


class ConnectivityError(ReflectraError):
    """A connection set fails to generate the group."""


class NumericError(ReflectraError):
    """A numeric routine failed to converge or to separate eigenvalues."""


class ConsistencyError(ReflectraError):
    """Two routes that must agree produced different answers."""
