"""Exception hierarchy shared by every module of the package."""


class VeroneseError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidSpecError(VeroneseError):
    pass


class RingMismatchError(VeroneseError):
    pass


class DegreeMismatchError(VeroneseError):
    pass


class SquarefreeRequiredError(VeroneseError):
    pass


class InvalidOrderError(VeroneseError):
    pass


class InvalidCoarseningError(VeroneseError):
    pass


class PreconditionError(VeroneseError):
    pass


class CapacityError(VeroneseError):
    """An exhaustive computation would exceed its configured size limit.

    ``degree`` is set when the failure happened while testing one degree
    component of a larger ideal.
    """

    def __init__(self, message, size=None, degree=None):
        super().__init__(message)
        self.size = size
        self.degree = degree


class DocumentError(VeroneseError):
    """Malformed input document; ``field`` names the offending JSON path."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
