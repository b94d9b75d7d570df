"""Exception hierarchy shared by all solver layers.

Everything that signals "an unlucky random choice" derives from
:class:`RandomnessFailure`; the solver retries those with fresh randomness.
Emptiness of a variety is a value (``EMPTY``), not an exception.
"""

from __future__ import annotations


class DeglociError(Exception):
    """Base class for all solver errors."""


class RandomnessFailure(DeglociError):
    """A random choice (prime, coordinates, lifting point, ...) was unlucky."""


class DivisorNotInvertible(RandomnessFailure):
    """A constant or divisor vanishes modulo the working prime."""


class SingularJacobian(RandomnessFailure):
    """Newton lifting met a Jacobian that is not invertible."""


class NotPrimitive(RandomnessFailure):
    """The linear form does not separate the points of the fibre."""


class BadLiftingPoint(RandomnessFailure):
    """The new lifting point lies on the discriminant locus."""


class CoverageFailure(RandomnessFailure):
    """No hitting sequence covering the sample points was found."""


class InconsistentResidues(RandomnessFailure):
    """Modular images of one object disagree."""


class RetriesExhausted(RandomnessFailure):
    """The bounded retry budget was used up."""

    def __init__(self, message: str, attempts: int = 0):
        super().__init__(message)
        self.attempts = attempts


class InsufficientPrecision(DeglociError):
    """The modulus is too small to reconstruct the rational coefficients."""


class NonMonicInput(DeglociError, ValueError):
    """A resultant input is not monic in the eliminated variable."""


class EmptyVariety(DeglociError):
    """The input variety V has no points."""


class NotOnVariety(DeglociError, ValueError):
    """A membership query was made for a point outside V."""


class PromiseViolationDetected(DeglociError):
    """A post-check on the final answer failed; input promises are likely false."""


class InvariantViolation(DeglociError):
    """An emitted lifting fibre does not satisfy its invariants."""


class ProblemError(DeglociError, ValueError):
    """Inconsistent sizes, shapes or ranks in a problem description."""


class ParseError(DeglociError, ValueError):
    """Malformed polynomial expression or problem file."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
