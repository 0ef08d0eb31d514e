"""Exception types shared across the package.

The CLI maps these onto exit codes: usage/domain errors exit 2, range and
resource errors exit 3.
"""


class UsageError(ValueError):
    """Arguments violate an operation's preconditions."""


class DomainError(UsageError):
    """A real-valued argument lies outside the function's domain."""


class RangeError(ValueError):
    """The prime sieve does not reach far enough for the request."""


class ResourceError(RuntimeError):
    """A request exceeds a configured memory or size budget."""


class CheckpointMismatchError(RuntimeError):
    """A checkpoint file belongs to a different range, block size or version."""
