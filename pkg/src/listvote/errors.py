"""Shared exception types."""


class ParameterError(ValueError):
    """Election parameters or operation arguments are inconsistent."""


class BallotFormatError(ValueError):
    """A ballot file does not conform to the expected schema."""


class HypothesisViolation(ValueError):
    """A guarantee was requested outside the regime where it applies."""
