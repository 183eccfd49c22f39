"""Exception types raised by the glenostatics engine."""


class GlenoError(Exception):
    """Base class for every error raised by this package."""


class NonFinite(GlenoError, ValueError):
    """A NaN or infinite number reached an operation that needs finite input."""


class NonFiniteObjective(NonFinite):
    def __init__(self, x, value):
        super().__init__(f"objective is not finite at x={x!r} (got {value!r})")
        self.x = x
        self.value = value


class DomainError(GlenoError, ValueError):
    """Input outside the region where the model equations are defined."""


class SingularConfiguration(DomainError):
    pass


class DegenerateTriangle(DomainError):
    pass


class PoseOutOfEnvelope(DomainError):
    pass


class NegativeRom(DomainError):
    pass


class ZeroHumanSpan(DomainError):
    pass


class ZeroElbowRadius(DomainError):
    pass


class NoInteriorMinimum(GlenoError):
    def __init__(self, x, bracket):
        super().__init__(f"minimum sits on the bracket boundary x={x!r} of {bracket!r}")
        self.x = x
        self.bracket = bracket


class UnknownMotion(GlenoError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CellError(DomainError):
    """A domain error raised while filling one cell of a torque surface."""

    def __init__(self, cell, angles, cause):
        super().__init__(f"cell {cell} at angles {angles}: {cause}")
        self.cell = cell
        self.angles = angles
        self.cause = cause


class InvalidGeometry(GlenoError, ValueError):
    """Raised with the complete list of geometry violations."""

    def __init__(self, violations):
        lines = "; ".join(str(v) for v in violations)
        super().__init__(f"{len(violations)} geometry violation(s): {lines}")
        self.violations = list(violations)


class ConfigError(GlenoError, ValueError):
    pass
