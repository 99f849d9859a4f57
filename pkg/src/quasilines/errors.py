"""Exception types shared across the package.

Everything derives from ValueError so callers (and the CLI) can treat any
invalid input uniformly while tests can still pin the precise failure.
"""


class QuasilinesError(ValueError):
    """Base class for all input and domain errors raised by this package."""


class DomainError(QuasilinesError):
    """A parameter lies outside its documented range."""


class DimensionMismatchError(QuasilinesError):
    """A divisor class does not live on the given surface model."""


class InvalidCurveError(QuasilinesError):
    """A class fails the (-1)-curve equations C.C = C.K = -1."""


class ModelError(QuasilinesError):
    """An incidence model failed validation."""


class UnknownPointError(ModelError):
    """A point id is not present in the model."""


class DegenerateQueryError(QuasilinesError):
    """A query that needs two distinct points was called with one."""
