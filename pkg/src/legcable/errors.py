"""Exception hierarchy shared by all modules."""


class LegcableError(ValueError):
    """Base class for every error raised by this package."""


class InvalidDiagram(LegcableError):
    def __init__(self, violations):
        self.violations = list(violations)
        kinds = ", ".join(sorted({v.kind for v in self.violations}))
        super().__init__(f"invalid front diagram: {kinds}")


class NonCoprime(LegcableError):
    pass


class NotNormalized(LegcableError):
    pass


class OutOfDomain(LegcableError):
    pass


class NotRealizable(LegcableError):
    pass


class Unsupported(LegcableError):
    pass


class TemplateMismatch(LegcableError):
    pass


class CurvesIntersect(LegcableError):
    pass


class FloorTooShallow(LegcableError):
    pass
