"""Exception types shared across the library."""


class FlagchowError(Exception):
    """Base class for all library errors."""


class RingMismatchError(FlagchowError):
    """Operands live in different coefficient rings / variable sets."""


class ValidationError(FlagchowError):
    """Input violates a documented precondition (e.g. non-homogeneous relation)."""


class OutOfRangeError(FlagchowError):
    """Degree above the truncation bound of a Groebner basis."""


class UnsupportedCaseError(FlagchowError):
    """Requested (group, prime) case is not in the catalog."""


class PresentationUnavailableError(FlagchowError):
    """Only a surjection target is recorded for this case, not a full presentation."""


class DataMissingError(FlagchowError):
    """A table lookup has no entry; never silently treated as zero."""


class InternalInconsistencyError(FlagchowError):
    """An exact computation contradicted a structural guarantee."""
