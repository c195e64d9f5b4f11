"""Exception hierarchy shared by every module of the package."""


class SeifertError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidInput(SeifertError):
    pass


class SingularMatrix(SeifertError):
    pass


class NotSeifertMatrix(SeifertError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class NotReducible(SeifertError):
    pass


class InvalidCongruence(SeifertError):
    pass


class RequiresInvertible(SeifertError):
    pass


class IntegralityRequired(SeifertError):
    pass


class DivisibilityError(SeifertError):
    pass


class CertificateError(SeifertError):
    """A certificate move could not be applied; ``index`` is its position."""

    def __init__(self, index, message):
        super().__init__(f"move {index}: {message}")
        self.index = index


class NotSelfDual(SeifertError):
    pass


class NotAdmissible(SeifertError):
    pass


class NotAdjacent(SeifertError):
    pass


class AmbientMismatch(SeifertError):
    pass
