"""Exception types shared across the package.

The CLI maps these onto its exit codes: validation problems exit with 2,
mathematical singularities with 3, and invariant breaches with 4.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(ValueError):
    """A documented precondition (parity, integrality, ...) is violated."""


class DivisibilityError(PreconditionError):
    """N (or a product involving N) lacks a divisibility the operation needs."""


class GridError(PreconditionError):
    """A translation does not land on the sampling grid."""


class SingularityError(ArithmeticError):
    """The requested quantity is singular at these parameters."""


class InvariantBreach(AssertionError):
    """An internal consistency check failed."""
