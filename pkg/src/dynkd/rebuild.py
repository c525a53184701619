"""Balanced subtree construction: the rebalancing primitive.

Rotations would break the per-level ordering of a k-d tree, so an
unbalanced subtree is rebalanced by rebuilding it outright from its
tuples.  Subtrees of up to three nodes take a direct fast path; larger
ones go through a median-splitting bulk builder that keeps one sorted
index ordering per super key.

Two interchangeable bulk variants are provided and must produce identical
trees:

* ``knlogn`` re-partitions all k orderings around the median at every
  recursion step, each by super-key comparison.
* ``nlogn`` splits the discriminant ordering positionally (the median's
  position is known) and stably partitions only the k-1 auxiliary
  orderings by comparison.

The median of an m-element range is the lower one, at sorted index
(m - 1) // 2.
"""

import threading

from . import superkey
from .errors import DimensionMismatchError, DuplicateDatumError
from .node import Node
from .superkey import _cmp

PARALLEL_THRESHOLD = 65536

KNLOGN = "knlogn"
NLOGN = "nlogn"
BUILD_VARIANTS = (KNLOGN, NLOGN)


def rebuild_small(tuples, level):
    """Build a subtree of at most three nodes with at most three comparisons.

    The subtree root's discriminant is ``level``.  With two tuples the lower
    median (the smaller super key) becomes the root; with three the median
    becomes the root and the others its children.
    """
    m = len(tuples)
    if m > 3:
        raise ValueError(f"rebuild_small takes at most 3 tuples, got {m}")
    if m == 0:
        return None
    pts = [tuple(t) for t in tuples]
    if m == 1:
        return Node(pts[0])
    if m == 2:
        a, b = pts
        if superkey.compare_superkey(a, b, level) > 0:
            a, b = b, a
        return Node(a, greater=Node(b), height=2)
    a, b, c = pts
    if superkey.compare_superkey(a, b, level) > 0:
        a, b = b, a
    if superkey.compare_superkey(b, c, level) > 0:
        b, c = c, b
        if superkey.compare_superkey(a, b, level) > 0:
            a, b = b, a
    return Node(b, less=Node(a), greater=Node(c), height=2)


def _prepare(tuples, level):
    """Validate input and produce the k sorted index orderings.

    Returns (points, orderings, k, discriminant-of-level-0... ) or None for
    an empty input.  Raises DuplicateDatumError if two tuples are identical;
    adjacent equal super keys in the first ordering imply identical tuples,
    so the scan is free after sorting.
    """
    pts = [tuple(t) for t in tuples]
    if not pts:
        return None
    k = len(pts[0])
    if k == 0:
        raise DimensionMismatchError("tuples must have at least one dimension")
    for t in pts:
        if len(t) != k:
            raise DimensionMismatchError(f"mixed dimensions: {len(t)}-d {t} vs {k}-d")
    n = len(pts)
    orders = [
        sorted(range(n), key=lambda i, p=p: pts[i][p:] + pts[i][:p]) for p in range(k)
    ]
    first = orders[0]
    for a, b in zip(first, first[1:]):
        if pts[a] == pts[b]:
            raise DuplicateDatumError(pts[a])
    return pts, orders, k


def build_balanced(tuples, level, variant=NLOGN):
    """Build a balanced subtree rooted at discriminant ``level``.

    Every node of the result has child heights differing by at most 1,
    which satisfies every balance policy.  Output is deterministic and
    identical across variants.
    """
    if variant not in BUILD_VARIANTS:
        raise ValueError(f"unknown build variant {variant!r}")
    prep = _prepare(tuples, level)
    if prep is None:
        return None
    pts, orders, k = prep
    return _build(pts, orders, level, k, variant, workers=1, threshold=0)


def build_parallel(tuples, level, workers, threshold=PARALLEL_THRESHOLD, variant=NLOGN):
    """Like build_balanced, but may build the two halves of a split in
    concurrent threads while the sub-problem size exceeds ``threshold``.

    The result is structurally identical to build_balanced for every
    worker count.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if variant not in BUILD_VARIANTS:
        raise ValueError(f"unknown build variant {variant!r}")
    prep = _prepare(tuples, level)
    if prep is None:
        return None
    pts, orders, k = prep
    return _build(pts, orders, level, k, variant, workers, threshold)


def _build(pts, orders, level, k, variant, workers, threshold):
    m = len(orders[0])
    if m == 0:
        return None
    p = level % k
    ordp = orders[p]
    mid = (m - 1) // 2
    med = ordp[mid]
    mpt = pts[med]

    lo_orders = [None] * k
    hi_orders = [None] * k
    if variant == NLOGN:
        lo_orders[p] = ordp[:mid]
        hi_orders[p] = ordp[mid + 1 :]
    for q in range(k):
        if variant == NLOGN and q == p:
            continue
        lo_q = []
        hi_q = []
        append_lo = lo_q.append
        append_hi = hi_q.append
        for i in orders[q]:
            c = _cmp(pts[i], mpt, p)
            if c < 0:
                append_lo(i)
            elif c > 0:
                append_hi(i)
        lo_orders[q] = lo_q
        hi_orders[q] = hi_q

    node = Node(mpt)
    if workers > 1 and m > threshold:
        w_less = workers // 2
        w_greater = workers - w_less
        box = [None]
        worker = threading.Thread(
            target=lambda: box.__setitem__(
                0, _build(pts, lo_orders, level + 1, k, variant, w_less, threshold)
            )
        )
        worker.start()
        node.greater = _build(
            pts, hi_orders, level + 1, k, variant, w_greater, threshold
        )
        worker.join()
        node.less = box[0]
    else:
        node.less = _build(pts, lo_orders, level + 1, k, variant, 1, threshold)
        node.greater = _build(pts, hi_orders, level + 1, k, variant, 1, threshold)

    hl = node.less.height if node.less is not None else 0
    hr = node.greater.height if node.greater is not None else 0
    node.height = 1 + (hl if hl > hr else hr)
    return node
