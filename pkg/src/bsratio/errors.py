"""Exception types shared across the package."""


class CostGuardError(ValueError):
    """Requested computation exceeds the module's cost guard."""


class DegenerateSpectrumError(ArithmeticError):
    """A character sum that must be nonzero came out numerically zero.

    L(1, chi) never vanishes, so a near-zero spectrum magnitude signals a
    bug or catastrophic precision loss, not a mathematical zero.
    """


class VerificationError(ArithmeticError):
    """Two independently computed values disagree beyond tolerance."""


class SchemaError(ValueError):
    """A results file does not match the expected CSV schema."""
