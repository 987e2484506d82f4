"""Exception types shared across the package."""


class ClasspecError(Exception):
    pass


class InvalidArgument(ClasspecError):
    """A caller passed a value outside the documented domain."""


class UnsupportedGroup(ClasspecError):
    """The requested group is outside the supported parameter ranges."""


class InvalidEpsilon(ClasspecError):
    """A sign was given for a family that takes none, or omitted where required."""


class CapExceeded(ClasspecError):
    """An enumeration would produce more objects than the caller's cap."""


class InfeasibleOrder(ClasspecError):
    """No field element of the requested multiplicative order exists."""


class NotPeriodic(ClasspecError):
    """A matrix failed to reach the identity within its exponent bound."""


class InfeasibleRecipe(ClasspecError):
    """No witness construction is available for the requested order."""


class OrderMismatch(ClasspecError):
    """A constructed witness did not have the order it was built for."""
