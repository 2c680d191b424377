"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (the caller handed us
something that violates a precondition) and :class:`NumericalError` (the
input was fine but a solve failed or landed inside a tolerance band).  The
CLI maps them to exit codes 2 and 3.
"""


class ConvexCertError(Exception):
    """Base class for every error raised by this package."""


class InputError(ConvexCertError, ValueError):
    pass


class NumericalError(ConvexCertError, ArithmeticError):
    pass


# numerics
class NotSymmetric(InputError):
    pass


class NegativeEntries(InputError):
    pass


class NoConvergence(NumericalError):
    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class SolverFailure(NumericalError):
    pass


# geometry
class ToleranceAmbiguous(NumericalError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class RankAmbiguous(NumericalError):
    pass


class InconsistentVerdict(NumericalError):
    """Two independent decision procedures disagreed."""


# reduction
class WitnessInvalid(InputError):
    pass


class NotInteriorInput(InputError):
    pass


class ReductionFailed(NumericalError):
    pass


# certificates
class SeparatorInvalid(InputError):
    pass


class NonPositiveH(NumericalError):
    pass


class CertificateFailed(NumericalError):
    pass


class RhoNotAboveOne(NumericalError):
    pass


class ZeroSeparator(NumericalError):
    pass


# rankin
class ZeroVector(InputError):
    pass


class ModeViolated(InputError):
    pass


# instance generation
class GenerationFailed(ConvexCertError):
    def __init__(self, message, impossible=False):
        super().__init__(message)
        self.impossible = impossible
