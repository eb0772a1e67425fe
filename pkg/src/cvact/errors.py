"""Exception types raised by cvact."""


class CVActError(Exception):
    """Base class for all cvact errors."""


class BonaFideViolation(CVActError, ValueError):
    """A matrix fails the uncertainty relation gamma + (i/2) Omega >= 0."""


class DegenerateBlock(CVActError, ValueError):
    """A local block of a two-mode covariance matrix is unphysical."""


class NotTwoModes(CVActError, ValueError):
    pass


class NotPSD(CVActError, ValueError):
    pass


class SingularMatrix(CVActError, ArithmeticError):
    pass


class CutoffTooLarge(CVActError, MemoryError):
    """The requested Fock cutoff exceeds the configured memory cap."""


class SeriesNotConverged(CVActError, ArithmeticError):
    pass


class DenseTooLarge(CVActError, MemoryError):
    pass


class CertificateFailed(CVActError):
    """A separability certificate residual is not positive semidefinite."""


class FaithfulnessViolation(CVActError, AssertionError):
    """Classical input produced output negativity, or nonclassical input did not."""
