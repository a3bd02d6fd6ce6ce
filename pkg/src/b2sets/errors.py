"""Exception types shared across the package."""


class B2SetsError(Exception):
    """Base class for all package errors."""


class DigitOverflow(B2SetsError, ArithmeticError):
    """A digit left the balanced range [-2, 2].

    The sparse representation is only closed under sums and differences of
    two in-range values; anything wider is a usage bug and fails loudly
    instead of carrying.
    """


class InternalVerificationFailure(B2SetsError):
    """A freshly constructed object failed its own invariant check."""


class NoPrimeFound(B2SetsError):
    """No prime in (d, 2d]; unreachable, kept as a defensive guard."""


class SingularSubmatrix(B2SetsError):
    """A square submatrix that must be invertible has determinant zero."""


class EmptyConstruction(B2SetsError):
    """The requested parameters produce an empty lattice, hence no elements."""


class ResourceCap(B2SetsError):
    """An enumeration exceeded its configured budget."""


class ParameterError(B2SetsError, ValueError):
    """A parameter combination violates a documented precondition."""
