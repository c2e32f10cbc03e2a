"""Exception types shared across the package."""


class DomainError(ValueError):
    """A point lies outside the domain an evaluator or kernel is defined on."""


class GridError(ValueError):
    """A sampling grid is empty, non-uniform, too coarse or wrongly placed."""


class UnitMismatchError(ValueError):
    """Spectra tagged with different imaginary units were combined."""


class TruncationError(ValueError):
    """A truncated integral or series cannot meet its admissibility rule."""


class InvariantError(ValueError):
    """A numerical invariant failed; ``deviation`` holds the measured defect."""

    def __init__(self, message: str, deviation: float = float("nan")):
        super().__init__(message)
        self.deviation = deviation
