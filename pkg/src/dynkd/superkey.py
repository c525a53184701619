"""Cyclic-permutation super keys over k-dimensional integer tuples.

A tuple's super key at dimension ``p`` is the concatenation of its
coordinates starting at ``p`` and wrapping around (for k=3 and p=2 that is
z:x:y).  Super keys are compared lexicographically, which totally orders
distinct tuples at every dimension: ties on the leading coordinate fall
through to the remaining ones, and two tuples compare equal only when all
their coordinates match.
"""

from .errors import CoordinateRangeError, DimensionMismatchError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

LESS = -1
EQUAL = 0
GREATER = 1


def _cmp(a, b, p):
    """Compare super keys at dimension p. No validation; p must be in [0, k)."""
    x = a[p]
    y = b[p]
    if x < y:
        return -1
    if x > y:
        return 1
    k = len(a)
    for i in range(1, k):
        j = p + i
        if j >= k:
            j -= k
        x = a[j]
        y = b[j]
        if x < y:
            return -1
        if x > y:
            return 1
    return 0


def compare_superkey(a, b, level):
    """Compare two tuples by their super keys at the given tree level.

    ``level`` is reduced modulo the dimension count, so callers may pass a
    raw tree depth.  Returns -1, 0 or +1 (LESS, EQUAL, GREATER); 0 occurs
    only when the tuples are identical in every coordinate.
    """
    k = len(a)
    if k != len(b):
        raise DimensionMismatchError(
            f"cannot compare a {k}-d tuple with a {len(b)}-d tuple"
        )
    if k == 0:
        raise DimensionMismatchError("tuples must have at least one dimension")
    return _cmp(a, b, level % k)


def check_point(point, k):
    """Validate one tuple against the tree contract and return it as a tuple.

    Coordinates must be integers that fit in a signed 64-bit word and the
    dimension count must match ``k``.
    """
    pt = tuple(point)
    if len(pt) != k:
        raise DimensionMismatchError(f"expected a {k}-d tuple, got {len(pt)}-d {pt}")
    for c in pt:
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"coordinates must be integers, got {c!r}")
        if c < INT64_MIN or c > INT64_MAX:
            raise CoordinateRangeError(f"coordinate {c} exceeds signed 64-bit range")
    return pt
