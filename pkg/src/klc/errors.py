"""Shared exception types."""


class FieldConfigError(ValueError):
    """Raised for an invalid field configuration (bad degree, reducible modulus)."""


class UnsupportedScaleError(ValueError):
    """Raised when a request exceeds the implemented brute-force or size bounds."""


class VerificationError(RuntimeError):
    """Raised when two independently computed values that must agree do not.

    This always indicates a bug (or a false identity), never bad user input.
    """
