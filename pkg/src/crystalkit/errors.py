"""Exception types shared across the package."""


class CrystalError(Exception):
    """Base class for all crystalkit errors."""


class InvalidTypeError(CrystalError):
    """Affine type outside the supported families or below the rank floor."""


class DimensionError(CrystalError):
    """Weight vector or coordinate tuple of the wrong length."""


class BudgetError(CrystalError):
    """A node or iteration budget was exceeded during graph generation."""


class PreconditionError(CrystalError):
    """Operation called outside its stated regime (e.g. k >= l, rank <= 2)."""


class SoundnessError(CrystalError):
    """A query touched an unevaluated (frontier) part of a truncated graph.

    Raised instead of returning a best-effort answer: truncation must never
    silently corrupt a closure, head, or isomorphism computation.
    """


class BoundExceeded(CrystalError):
    """An operator string or recursion ran past its configured bound."""


class TheoremViolation(CrystalError):
    """A property that the theory guarantees failed on concrete data.

    Carries a witness describing the offending element(s) when available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TruncationFault(CrystalError):
    """A lowering operator tried to act past the frozen end of a truncated path.

    `suggested_increase` is the minimal number of extra slots that would let
    this particular application proceed.
    """

    def __init__(self, message, suggested_increase=1):
        super().__init__(message)
        self.suggested_increase = suggested_increase
