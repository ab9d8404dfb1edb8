"""Diagnostics raised by the transform, factorize and normalize passes."""


class PassError(ValueError):
    """Base class; ``term`` is filled in when the failing term is known."""

    def __init__(self, message: str, term: str | None = None):
        self.message = message
        self.term = term
        super().__init__(self._text())

    def _text(self) -> str:
        return f"term {self.term!r}: {self.message}" if self.term else self.message

    def with_term(self, term: str) -> "PassError":
        err = type(self).__new__(type(self))
        PassError.__init__(err, self.message, term)
        return err


class UnmappedTerminalError(PassError):
    pass


class AlreadyTransformedError(PassError):
    pass


class UnknownQuantityError(PassError):
    pass


class InconsistentDimensions(PassError):
    pass


class InconsistentFactors(PassError):
    pass


class NonHomogeneousArgument(PassError):
    pass


class DimensionalMismatchAcrossTerms(PassError):
    pass


class UnknownReferenceTerm(PassError, KeyError):
    def __str__(self) -> str:
        return self._text()
