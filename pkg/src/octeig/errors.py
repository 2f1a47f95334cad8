"""Exception types shared across the package."""


class OctonionError(Exception):
    """Base class for all errors raised by octeig."""


class TableInvalid(OctonionError):
    pass


class DivisionByZero(OctonionError, ZeroDivisionError):
    pass


class NotUnitImaginary(OctonionError, ValueError):
    pass


class ShapeMismatch(OctonionError, ValueError):
    pass


class NotInA(OctonionError, ValueError):
    """The matrix is not of the form p*I + q*J(r) with q != 0."""


class NotInV(OctonionError, ValueError):
    """The vector (x, y) does not satisfy |x| = |y| and x.y = 0."""


class InadmissibleLambda(OctonionError, ValueError):
    def __init__(self, constraint, value):
        super().__init__(f"eigenvalue violates {constraint} (defect {value:.3e})")
        self.constraint = constraint
        self.value = value


class ZeroComponent(OctonionError, ValueError):
    pass


class PreconditionViolated(OctonionError, ValueError):
    pass


class InvalidPair(OctonionError, ValueError):
    pass


class NotQuaternionic(OctonionError, ValueError):
    pass


class NotNormalized(OctonionError, ValueError):
    pass


class DegenerateSample(OctonionError, RuntimeError):
    pass


class ParseError(OctonionError, ValueError):
    pass


class VersionUnsupported(ParseError):
    pass
