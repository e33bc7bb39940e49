"""Exception types shared across the package."""


class RetroqError(Exception):
    """Base class for every error raised by retroq."""


class NotSquareError(RetroqError):
    """A square matrix was required."""


class NotHermitianError(RetroqError):
    """Hermiticity violated beyond tolerance."""


class NotPsdError(RetroqError):
    """Positive semidefiniteness violated beyond tolerance."""


class DimensionMismatchError(RetroqError):
    """Operator / state dimensions are incompatible."""


class ShapeMismatchError(RetroqError):
    """Operators in a set do not share a common shape."""


class InvalidOperatorSetError(RetroqError):
    """Construction-time invariant violated (completeness, positivity, ...)."""


class ZeroProbabilityOutcomeError(RetroqError):
    """Requested outcome has zero probability for the given state."""


class NotPerfectlyRetrodictableError(RetroqError):
    """Measurement fails the perfect-retrodiction criterion."""


class NotFineGrainedError(RetroqError):
    """Operation defined only for one Kraus operator per outcome."""


class TooManyOutcomesError(RetroqError):
    """More outcomes than output-space dimensions."""


class BadBasisError(RetroqError):
    """Supplied reference basis is not usable (size, dimension or orthonormality)."""


class LinearlyDependentStatesError(RetroqError):
    """States are linearly dependent, so error-free discrimination is impossible."""


class DependentFinalStatesError(RetroqError):
    """Post-measurement states are linearly dependent for the given input."""


class NonUnitaryInputError(RetroqError):
    """An operator expected to be unitary is not."""


class BadMuError(RetroqError):
    """Shift-pair weight must satisfy 0 < |mu| < 1."""
