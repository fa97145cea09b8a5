"""Exception types raised by the library.

Every error that signals a violated precondition derives from
``PreconditionError`` so the CLI can map it to exit code 2.
"""

from __future__ import annotations


class PreconditionError(ValueError):
    """Input does not satisfy the documented precondition of an operation."""


class InvalidPartition(PreconditionError):
    """Patterns of a described sequence do not partition the natural numbers."""


class ZeroLengthInterval(PreconditionError):
    """A generator interval has zero length at some index."""


class UnsolvableRadius(PreconditionError):
    """A radius formula falls outside the solvable formula fragment."""


class PreconditionDensity(PreconditionError):
    """A set that must have density one at a point does not."""


class HostNotSuitable(PreconditionError):
    """A host set for the separating construction is not natural-open."""


class PointInClosedSet(PreconditionError):
    """The point to separate lies inside the closed set."""


class NotAPartition(PreconditionError):
    """Pieces of a piecewise function do not partition the real line."""


class FormulaError(PreconditionError):
    """A formula string cannot be parsed or leaves the supported grammar."""


class DensityUndefined(PreconditionError):
    """Natural density is not available for the given index expression."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug."""
