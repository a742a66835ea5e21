"""Exception hierarchy shared by every tklab module."""


class TklabError(Exception):
    """Base class for all engine errors."""


class InputError(TklabError, ValueError):
    """Input rejected before computation (CLI exit code 2)."""


class InternalInconsistency(TklabError):
    """Two independent computation routes disagreed (CLI exit code 3)."""


class DegenerateInput(InputError):
    pass


class PoleEvaluation(TklabError, ArithmeticError):
    pass


class NotInH2(InputError):
    pass


class CircleZero(InputError):
    pass


class CircleSingularity(InputError):
    pass


class TrivialKernel(InputError):
    pass


class NotInKernel(InputError):
    pass


class HypothesisViolated(InputError):
    pass


class NotNearlyInvariant(InputError):
    pass


class AllVanishAtOrigin(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class RankLoss(TklabError):
    """Numerical rank dropped where mathematics says it cannot."""


class GapFailure(TklabError):
    """The truncated Toeplitz matrix has no clean singular-value gap."""


class WindingMismatch(InternalInconsistency):
    pass


class InconsistencyDetected(InternalInconsistency):
    pass


class QuadratureMismatch(InternalInconsistency):
    pass


class UnknownSuite(InputError):
    pass


class ParseError(InputError):
    pass


class ValidationError(InputError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class TruncationWarning(UserWarning):
    """Fourier or Taylor tail is above the requested bound."""
