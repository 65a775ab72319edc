"""Exception types shared across the package."""


class LogmodelError(Exception):
    """Base class for all library errors."""


class ParseError(LogmodelError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ZeroPolynomial(LogmodelError):
    pass


class DegenerateElimination(LogmodelError):
    pass


class NotOnCurve(LogmodelError):
    pass


class NonReducible(LogmodelError):
    pass


class InvalidCenter(LogmodelError):
    pass


class BranchNotInTree(LogmodelError):
    pass


class AxiomViolation(LogmodelError):
    pass


class InconsistentIndices(LogmodelError):
    pass


class PerturbationRetryExhausted(LogmodelError):
    pass


class AssertionLZero(LogmodelError):
    pass


class AssertionRhoZero(LogmodelError):
    pass


class NoNonzeroSolution(LogmodelError):
    pass


class NonRationalResidue(LogmodelError):
    pass


class NotMainResonant(LogmodelError):
    pass


class DirectionCollision(LogmodelError):
    pass


class SearchExhausted(LogmodelError):
    pass


class NotLAnalytic(LogmodelError):
    pass


class RoundtripMismatch(LogmodelError):
    pass
