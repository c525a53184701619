"""Dynamic, self-balancing k-d tree.

A k-d tree cannot be rebalanced by rotations without breaking its
per-level ordering, so this tree restores balance by rebuilding any
subtree an insertion or deletion unbalances.  Balance is judged by a
configurable criterion (AVL height difference 1 to 4, or the red-black
factor-of-two rule), and bulk construction of balanced subtrees doubles
as a static-tree builder.

The hot kernels exist twice: a compiled Cython extension and a pure
Python fallback with identical behavior, selected at import time.
"""

from ._backend import HAVE_COMPILED, available_backends, default_backend
from .errors import (
    CoordinateRangeError,
    DimensionMismatchError,
    DuplicateDatumError,
    EmptySubtreeError,
)
from .node import Node, collect_subtree, node_height, same_structure, structure
from .ops import MAX, MIN, contains_in, delete_from, find_extreme, insert_into
from .policy import (
    ALWAYS_SUCCESSOR,
    HIGHER_SUBTREE,
    BalancePolicy,
    is_balanced,
)
from .rebuild import (
    KNLOGN,
    NLOGN,
    PARALLEL_THRESHOLD,
    build_balanced,
    build_parallel,
    rebuild_small,
)
from .superkey import EQUAL, GREATER, LESS, compare_superkey
from .tree import KdTree
from .validate import VerifyReport, Violation, verify_subtree

__version__ = "0.1.0"

__all__ = [
    "ALWAYS_SUCCESSOR",
    "BalancePolicy",
    "CoordinateRangeError",
    "DimensionMismatchError",
    "DuplicateDatumError",
    "EQUAL",
    "EmptySubtreeError",
    "GREATER",
    "HAVE_COMPILED",
    "HIGHER_SUBTREE",
    "KNLOGN",
    "KdTree",
    "LESS",
    "MAX",
    "MIN",
    "NLOGN",
    "Node",
    "PARALLEL_THRESHOLD",
    "VerifyReport",
    "Violation",
    "available_backends",
    "build_balanced",
    "build_parallel",
    "collect_subtree",
    "compare_superkey",
    "contains_in",
    "default_backend",
    "delete_from",
    "find_extreme",
    "insert_into",
    "is_balanced",
    "node_height",
    "rebuild_small",
    "same_structure",
    "structure",
    "verify_subtree",
]
