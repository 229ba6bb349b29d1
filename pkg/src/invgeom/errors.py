"""Exception types shared across the package."""


class InvgeomError(Exception):
    """Base class for all package errors."""


class SizeMismatchError(InvgeomError):
    """Partial bijections over different ground sets were combined."""


class CapacityError(InvgeomError):
    """An enumeration blew past its configured element cap."""


class ValidationError(InvgeomError):
    """A structural invariant failed; carries a witness tuple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(InvgeomError):
    """An operation was called outside its stated precondition."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TheoremViolationError(InvgeomError):
    """A guaranteed conclusion failed to hold; indicates a bug, not bad input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(InvgeomError):
    """A file could not be parsed; carries the offending field if known."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
