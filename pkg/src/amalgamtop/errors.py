"""Exception types shared across the package.

Three families matter to callers:

* ``ValidationError`` marks bad input (malformed selections, points outside
  their space, preconditions that the caller can fix).  The CLI maps these
  to exit code 2.
* ``BoundExceeded`` (and its ``SizeBound`` refinement for carrier and
  product budgets) marks work that was refused because it would exceed a
  configured size limit.  Exit code 3.
* ``VerificationError`` marks a machine-checked property that failed to
  verify.  Since the library only asserts properties it can prove for the
  inputs at hand, seeing one of these means either a deliberately corrupted
  instance (mutation testing) or a bug.  Exit code 1.
"""


class AmalgamTopError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(AmalgamTopError, ValueError):
    """Input failed validation."""


class NotT0Base(ValidationError):
    """The base space of a subbase selection must be T0."""


class EmptySubbaseMember(ValidationError):
    """The empty set may not appear in a subbase selection."""


class UnknownSubbaseMember(ValidationError):
    """A referenced set is not a member of the subbase selection."""


class EmptySubspace(ValidationError):
    """A nonempty subset of points was required."""


class MismatchedFactors(ValidationError):
    """Supplied maps or spaces do not line up with the factor assignment."""


class PointNotInMember(ValidationError):
    """The base point does not belong to the named subbase member."""


class EmptyFactorSubset(ValidationError):
    """Factor subsets must stay nonempty."""


class FactorsNotUniform(ValidationError):
    """All factors were required to be the same space."""


class FactorNotHomogeneous(ValidationError):
    """The shared factor was required to be homogeneous."""


class PreconditionFailed(ValidationError):
    """A stated hypothesis does not hold for the given instance."""


class NotDense(ValidationError):
    """The supplied map does not have dense range."""


class NotEmbedding(ValidationError):
    """The supplied map is not an embedding."""


class NoCompatibleAmbientOpen(ValidationError):
    """No ambient open set traces to the requested member while avoiding
    the added point, so the connectification step cannot proceed."""

    def __init__(self, message: str, member: int | None = None):
        self.member = member
        super().__init__(message)


class BoundExceeded(AmalgamTopError):
    """A configured size or search bound was exceeded."""


class SizeBound(BoundExceeded):
    """A carrier or product size budget was exceeded."""


class VerificationError(AmalgamTopError):
    """A property that was asserted to hold failed its mechanical check."""
