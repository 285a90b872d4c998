"""Exception types shared across the package.

The CLI maps these onto exit codes, so the split is by failure mode:
state/parameter validation, numerical trouble (truncation, positivity),
and unsupported state/operation combinations.
"""


class QdistError(Exception):
    """Base class for all package-specific errors."""


class StateValidationError(QdistError):
    """A state object violates one of its defining invariants."""


class SpecParseError(QdistError):
    """A textual state description does not match the grammar."""


class DimensionMismatchError(QdistError):
    """Two operands live in truncated spaces of different size."""


class NotHermitianError(QdistError):
    """An operator expected to be Hermitian is not, beyond tolerance."""


class NotPositiveSemidefiniteError(QdistError):
    """An eigenvalue fell below the -1e-10 clamping floor."""


class NumericalToleranceError(QdistError):
    """An internal consistency check (imaginary part, clamp size) failed."""


class TailMassError(QdistError):
    """A requested truncation discards more probability than allowed."""


class TruncationInfeasibleError(QdistError):
    """No admissible truncation dimension exists below the configured cap."""


class DegenerateStateError(QdistError):
    """State parameters hit a removable singularity of the defining formula."""


class UndefinedQuantityError(QdistError):
    """The requested quantity is undefined for this input (e.g. 0/0)."""


class InsufficientCutoffError(QdistError):
    """A series reconstruction was truncated too early to be trusted."""


class GridError(QdistError):
    """A phase-space or quadrature grid is too small or too coarse."""


class UnsupportedCombinationError(QdistError):
    """The operation is not defined for this combination of inputs."""
