"""Exception hierarchy shared by every module."""


class LFPolyError(Exception):
    """Base class. ``exit_code`` is what the command line reports."""

    exit_code = 3


class ValidationError(LFPolyError, ValueError):
    exit_code = 2


class DimensionMismatch(ValidationError):
    pass


class ScenarioMismatch(ValidationError):
    pass


class NotNoSignalling(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class DegenerateInput(LFPolyError):
    """The affine hull of a point set is lower dimensional than the ambient space."""

    def __init__(self, affine_dimension, ambient_dimension):
        self.affine_dimension = affine_dimension
        self.ambient_dimension = ambient_dimension
        super().__init__(
            f"affine hull has dimension {affine_dimension}, ambient space has {ambient_dimension}"
        )


class Unbounded(LFPolyError):
    pass


class Empty(LFPolyError):
    pass


class CapExceeded(LFPolyError):
    pass


class UnmatchedFacet(LFPolyError):
    pass


class NoViolation(LFPolyError):
    pass


class DegeneratePlane(LFPolyError):
    pass
