"""Exception hierarchy shared by all modules."""


class UMEBError(ValueError):
    """Base class for every error raised by this package."""


class DimensionError(UMEBError):
    """Operands have incompatible shapes."""


class DomainError(UMEBError):
    """A parameter lies outside the admissible range of a construction."""


class PreconditionError(UMEBError):
    """An input object violates a property the operation relies on."""


class ClaimError(PreconditionError):
    """A basis set cannot carry the claim the operation needs (e.g. unextendible input that is complete)."""
