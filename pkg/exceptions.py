"""Error hierarchy shared by every isogeny-lab module."""


class LabError(Exception):
    """Base class for all errors raised by the lab."""


class UsageError(LabError, ValueError):
    """Bad arguments: out-of-range parameters, wrong types, empty inputs."""


class FieldMismatchError(UsageError):
    """Operands live in different fields (modulus or extension degree)."""


class ConfigError(UsageError):
    """An environment setting could not be parsed."""


class SingularCurveError(UsageError):
    """The parameters give 4a^3 + 27b^2 = 0."""


class OffCurveError(UsageError):
    """A point does not satisfy the curve equation."""


class ResourceLimitError(LabError):
    """A size bound of an exhaustive routine was exceeded."""


class DegenerateSumError(LabError):
    """The sum/difference relations need distinct x-maps (phi != +-psi)."""


class UnsupportedInseparableError(LabError):
    """Multiplication by m with p | m is not supported as an x-map."""


class IdentityViolation(LabError, AssertionError):
    """A verified identity failed. Never expected to fire."""
