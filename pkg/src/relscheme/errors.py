"""Exception hierarchy shared by every module."""


class RelSchemeError(Exception):
    pass


class ShapeError(RelSchemeError, ValueError):
    """Domains, codomains or base objects do not line up."""


class UnsupportedShapeError(RelSchemeError, ValueError):
    pass


class PreconditionError(RelSchemeError, ValueError):
    """An input fails a checked mathematical precondition."""


class InputCompletenessError(RelSchemeError, KeyError):
    """Supplied finite data lacks a required object or arrow."""


class UnsupportedBaseError(RelSchemeError, ValueError):
    pass


class InvariantViolation(RelSchemeError, AssertionError):
    """A value that must be well defined by a universal property was not.

    This signals a bug in the library, never bad user input.
    """


class SuiteError(RelSchemeError):
    """Problems loading a suite document."""


class ParseError(SuiteError):
    def __init__(self, message: str, location: str = "") -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ResolutionError(SuiteError):
    pass


class ValidationError(SuiteError):
    pass
