"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for numerical-geometry failures."""


class NotTimelike(GeometryError):
    pass


class NotSpacelike(GeometryError):
    """The induced metric is not positive definite (Q <= 0)."""


class DomainError(GeometryError):
    """An evaluation left the real domain of a function or formula."""


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class BlowUp(GeometryError):
    """An ODE solution left its admissible band before the end of the range."""

    def __init__(self, message: str, last_u: float, partial=None):
        super().__init__(f"{message}; last valid u = {last_u!r}")
        self.last_u = last_u
        self.partial = partial


class UnknownName(KeyError):
    pass


class MissingParam(KeyError):
    pass


class NonPositiveRadius(GeometryError):
    pass


class PreconditionViolated(ValueError):
    """Inputs break the assumptions under which a closed-form coefficient holds."""


class IllConditionedWarning(RuntimeWarning):
    pass
