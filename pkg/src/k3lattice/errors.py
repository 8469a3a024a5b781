"""Exception and warning types shared across the package."""


class LatticeError(ValueError):
    """Base class for all lattice-arithmetic errors."""


class InvalidGramError(LatticeError):
    """Gram matrix is not square, not symmetric, or not integral."""


class DegenerateLatticeError(LatticeError):
    """A (sub)lattice turned out to have determinant zero."""


class DomainError(LatticeError):
    """An argument is outside the operation's domain (bad n, bad prime, ...)."""


class StructureError(LatticeError):
    """Input lacks the structure the operation requires (not an isometry,
    not isotropic, discriminant not of the expected shape, ...)."""


class CapacityError(LatticeError):
    """An exhaustive enumeration would exceed the configured size bound."""


class InconsistencyError(LatticeError):
    """Input data is internally inconsistent (e.g. samples not generated by
    any symmetric form, or a degenerate distinguished vector)."""


class UnverifiedHypothesisWarning(UserWarning):
    """A structural hypothesis (two orthogonal hyperbolic-plane summands)
    could not be certified from constructor lineage; the result relies on
    the caller's assertion."""
