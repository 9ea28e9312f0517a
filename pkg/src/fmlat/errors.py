"""Exception types shared across the package."""


class FmlatError(Exception):
    """Base class for every error raised by fmlat."""


class InputError(FmlatError):
    """Malformed or out-of-contract input."""


class UnsupportedModelError(FmlatError):
    """The operation only supports the built-in elliptic K3 model."""


class AdmissibilityError(InputError):
    """A 2x2 kernel matrix violates its admissibility constraints."""

    def __init__(self, failures):
        self.failures = tuple(failures)
        super().__init__("; ".join(self.failures))


class CoprimalityError(InputError):
    """Rank and fiber degree must be coprime."""


class ReductionError(FmlatError):
    """Operator does not restrict to the (rank, fiber degree) plane."""


class SingularMatrixError(FmlatError):
    """Exact inversion hit a zero determinant."""
