"""Exception hierarchy shared across the package."""


class AlgvalError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AlgvalError):
    """Malformed input: unknown element, bad table, bad literal, bad formula."""


class CapabilityError(AlgvalError):
    """The requested operation needs a structure the algebra does not have."""


class ResourceError(AlgvalError):
    """An enumeration would exceed its configured budget."""


class InvariantError(AlgvalError):
    """An internal invariant failed; the input is outside the supported class."""
