"""Exception hierarchy.

:class:`Rejection` subclasses are typed classification outcomes (the input is
well formed but is not the kind of object a classifier recognizes); the CLI
maps them to exit code 2.  Everything else is a usage or input error.
"""


class MatalgError(Exception):
    pass


class FieldMismatch(MatalgError, TypeError):
    pass


class AmbientMismatch(MatalgError, ValueError):
    pass


class SingularMatrix(MatalgError, ArithmeticError):
    pass


class NotClosed(MatalgError, ValueError):
    pass


class NotIdempotent(MatalgError, ValueError):
    pass


class NotInCorner(MatalgError, ValueError):
    pass


class InvalidSpec(MatalgError, ValueError):
    pass


class WrongCharacteristic(MatalgError, ValueError):
    pass


class WrongRank(MatalgError, ValueError):
    pass


class CertificationFailed(MatalgError, RuntimeError):
    """Post-verification of a computed object failed; indicates a bug."""


class ParseError(MatalgError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class DimensionMismatch(ParseError):
    pass


class UnknownSuite(MatalgError, KeyError):
    pass


class InvalidParams(MatalgError, ValueError):
    pass


class Rejection(MatalgError):
    """Input is valid but not of the recognized kind."""


class FrameViolation(Rejection):
    pass


class NotParabolic(Rejection):
    pass


class NotMaxNonunital(Rejection):
    pass


class NotGammaMax(Rejection):
    pass


class DimensionTooSmall(Rejection):
    pass


class NotOmegaMax(Rejection):
    pass


class NotInOmega(Rejection):
    pass
