"""Exception hierarchy shared by all evolalg modules."""


class EvolalgError(Exception):
    """Base class for all library errors."""


class NonPrimeModulus(EvolalgError):
    pass


class ForbiddenCharacteristic(EvolalgError):
    """Raised for characteristic 2, 3 or 5, where the theory breaks down."""


class DivisionByZero(EvolalgError):
    pass


class FieldMismatch(EvolalgError):
    pass


class ParseError(EvolalgError):
    def __init__(self, message, offset=None, line=None, column=None):
        super().__init__(message)
        self.offset = offset
        self.line = line
        self.column = column


class ShapeError(EvolalgError):
    pass


class DimensionMismatch(EvolalgError):
    pass


class NotIdempotent(EvolalgError):
    pass


class NotPowerAssociative(EvolalgError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNil(EvolalgError):
    pass


class UnknownLabel(EvolalgError):
    pass


class ParamConstraintViolated(EvolalgError):
    pass


class DimensionTooLarge(EvolalgError):
    pass


class InternalConsistency(EvolalgError):
    """A postcondition the theory guarantees failed: always a bug."""
