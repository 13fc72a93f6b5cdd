"""Exception hierarchy. Every error raised by the library is a ``ValueError``."""


class GaussGGMError(ValueError):
    pass


class InvalidArgumentError(GaussGGMError):
    pass


class UnphysicalStateError(GaussGGMError):
    pass


class UnsupportedStateError(GaussGGMError):
    pass


class ConstraintViolationError(GaussGGMError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
