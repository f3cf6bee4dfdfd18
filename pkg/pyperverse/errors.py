class PyperverseError(Exception):
    pass


class ValidationError(PyperverseError, ValueError):
    """Malformed or inconsistent input. The CLI exits with code 2."""


class VerificationError(PyperverseError):
    """A structural claim failed while computing. The CLI exits with code 1."""


# complexes
class EmptyComplexError(ValidationError):
    pass


class DuplicateVertexError(ValidationError):
    pass


class UnknownVertexError(ValidationError):
    pass


class DisconnectedComplexError(ValidationError):
    pass


class RedundantMaximalError(ValidationError):
    pass


class UnknownSimplexError(ValidationError, KeyError):
    def __str__(self):
        return ValidationError.__str__(self)


class NotClosedError(ValidationError):
    pass


# perversities
class PerversityError(ValidationError):
    def __init__(self, message: str, index: int, clause: str):
        super().__init__(message)
        self.index = index
        self.clause = clause


class LevelOutOfRangeError(ValidationError):
    pass


# algebra and modules
class ShapeMismatchError(ValidationError):
    pass


class UnknownNodeError(ValidationError, KeyError):
    def __str__(self):
        return ValidationError.__str__(self)


class NotQuadraticError(ValidationError):
    pass


class BaseMismatchError(ValidationError):
    pass


class MembershipError(ValidationError):
    pass


class NotComparableError(ValidationError):
    pass


class DocumentError(ValidationError):
    pass


class ChainDisagreementError(VerificationError):
    pass


class ResolutionError(VerificationError):
    pass


class CalibrationError(VerificationError):
    pass
