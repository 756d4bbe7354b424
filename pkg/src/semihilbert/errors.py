"""Exception types shared across the package."""


class SemiHilbertError(Exception):
    """Base class for all semihilbert errors."""


class DimensionMismatch(SemiHilbertError):
    """Vector or matrix shape does not match the weight dimension."""


class NotHermitian(SemiHilbertError):
    """Input weight matrix is too far from Hermitian to symmetrize."""


class NotPSD(SemiHilbertError):
    """Weight has an eigenvalue significantly below zero."""


class ZeroWeight(SemiHilbertError):
    """Weight matrix is (numerically) zero; a nonzero weight is required."""


class ZeroRank(SemiHilbertError):
    """Operation requires a weight of rank at least one."""


class NotABounded(SemiHilbertError):
    """Operator does not act boundedly on the seminormed space.

    Equivalently, it fails to annihilate the null space of the weight.
    Carries both Douglas residuals (which coincide in finite dimensions,
    being adjoint-transposes of each other).
    """

    def __init__(self, message, residual_seminorm=None, residual_adjoint=None):
        super().__init__(message)
        self.residual_seminorm = residual_seminorm
        self.residual_adjoint = residual_adjoint


class MinModulusTooSmall(SemiHilbertError):
    """Denominator operator is not bounded below; center of mass undefined."""


class RankTooLarge(SemiHilbertError):
    """Brute-force grid oracle only supports small reduced ranks."""


class BadSpec(SemiHilbertError):
    """Instance specification is out of the supported range."""
