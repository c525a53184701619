"""Exception types raised on contract violations."""


class DimensionMismatchError(ValueError):
    """A tuple's dimension count does not match what the operation expects."""


class CoordinateRangeError(ValueError):
    """A coordinate does not fit in a signed 64-bit integer."""


class DuplicateDatumError(ValueError):
    """A bulk build was given two identical tuples."""

    def __init__(self, point):
        self.point = tuple(point)
        super().__init__(f"duplicate tuple {self.point}")


class EmptySubtreeError(ValueError):
    """An extreme search was attempted on an empty subtree."""
