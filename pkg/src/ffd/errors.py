"""Exception types shared across the package."""


class FFDError(Exception):
    """Base class for library errors."""


class PreconditionError(FFDError):
    """An operation was called on inputs that violate its contract."""


class PrecisionError(FFDError):
    """A quantity could not be certified at the available precision."""


class DegenerateRepresentationError(FFDError):
    """A periodic continued-fraction representation needs to be rotated."""
