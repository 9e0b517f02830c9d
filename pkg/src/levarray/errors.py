"""Exception types shared across the package."""

from __future__ import annotations


class LevarrayError(Exception):
    """Base class for all package-specific errors."""


class NotStableError(LevarrayError):
    """The drift matrix is not Hurwitz; no steady state exists."""


class SolveFailureError(LevarrayError):
    """A linear solve failed or produced an unacceptable residual."""


class NumericalFailureError(LevarrayError):
    """An eigen-decomposition or related numerical routine failed."""


class NotNormalizedError(LevarrayError):
    """Bogoliubov coefficients violate the -l1^2 + l2^2 + l3^2 = 1 constraint."""


class ShapeMismatchError(LevarrayError):
    """Matrix or vector dimensions are inconsistent."""


class ZeroVectorError(LevarrayError):
    """A coefficient vector is identically zero."""


class UnsortedInputError(LevarrayError):
    """Values expected in descending order were not sorted."""


class AllUnstableError(LevarrayError):
    """Every evaluated point of an optimization problem is unstable."""


class ConfigError(LevarrayError):
    """A configuration file or override is malformed.

    Parameters
    ----------
    message:
        Human-readable description, including the offending key.
    key:
        The configuration key that triggered the error, if known.
    line:
        1-based line number in the config file, if the error came from a file.
    """

    def __init__(self, message: str, *, key: str | None = None, line: int | None = None):
        super().__init__(message)
        self.key = key
        self.line = line
