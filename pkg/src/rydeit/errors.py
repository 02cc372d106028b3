"""Exception types shared across the package."""


class RydeitError(Exception):
    """Base class for all domain errors raised by this package."""


class ParameterError(RydeitError, ValueError):
    """Model parameters violate a hard constraint."""


class DimensionError(RydeitError):
    """Requested particle number exceeds what a solver path supports."""


class SingularModeError(RydeitError):
    """A dressed mode pair is (numerically) degenerate, sin(theta_n) ~ 0.

    The eigenvector layer has a removable singularity there; callers that
    only need cos(theta) / sin^2(theta) are unaffected.
    """

    def __init__(self, n: int, sin_theta: complex):
        self.n = n
        self.sin_theta = sin_theta
        super().__init__(
            f"mode pair n={n} is numerically degenerate (|sin theta| = {abs(sin_theta):.3e})"
        )


class RecursionSingularityError(RydeitError):
    """A transfer-recursion step hit a vanishing denominator."""

    def __init__(self, k: int, factor: str, magnitude: float):
        self.k = k
        self.factor = factor
        self.magnitude = magnitude
        super().__init__(
            f"transfer recursion singular at step k={k}: |{factor}| = {magnitude:.3e}"
        )


class ConvergenceError(RydeitError):
    """The iterative eigensolver failed to deliver the requested pair."""


class SweepSpecError(RydeitError, ValueError):
    """A sweep specification is malformed."""
