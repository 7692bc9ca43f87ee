"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a domain invariant (simplex, normalization, ...)."""


class DimensionMismatchError(ValidationError):
    pass


class SingularityError(ValueError):
    """A formula has a vanishing denominator or a boundary singularity."""


class UnsupportedDimensionError(ValueError):
    pass
