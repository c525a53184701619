"""Node-level dynamic operations: insert, delete, search, extreme search.

These functions form the recursive core that KdTree drives from the root
(level 0); they accept an explicit starting level so subtrees can be
manipulated directly.  Mutating functions return the new subtree root,
because rebalancing may replace the node a link points to.

On the unwind from a mutation point every node's height is recomputed
and, at each node found unbalanced under the policy (deepest first), the
whole subtree rooted there is rebuilt; the unwind then continues upward
with fresh heights.
"""

from .errors import EmptySubtreeError
from .node import Node, collect_subtree
from .policy import HIGHER_SUBTREE, is_balanced
from .rebuild import build_balanced, rebuild_small
from .superkey import _cmp

MIN = "min"
MAX = "max"


class RebuildStats:
    """Tracks subtree rebuilds triggered by dynamic operations."""

    __slots__ = ("largest", "count")

    def __init__(self):
        self.largest = 0
        self.count = 0

    def record(self, n):
        self.count += 1
        if n > self.largest:
            self.largest = n


def contains_in(root, point, level, k):
    """True iff a node holding ``point`` is reachable from ``root``."""
    node = root
    while node is not None:
        c = _cmp(point, node.point, level % k)
        if c == 0:
            return True
        node = node.less if c < 0 else node.greater
        level += 1
    return False


def find_extreme(root, level, dim, direction, k):
    """Node with the smallest (MIN) or largest (MAX) super key at ``dim``.

    At a node whose discriminant equals ``dim`` only one child subtree can
    contain the extreme; at any other discriminant the node and both child
    subtrees are candidates, so both sides are searched.
    """
    if root is None:
        raise EmptySubtreeError("cannot search an empty subtree")
    if direction not in (MIN, MAX):
        raise ValueError(f"direction must be {MIN!r} or {MAX!r}")
    if not 0 <= dim < k:
        raise ValueError(f"dimension {dim} out of range for k={k}")
    return _extreme(root, level, dim, direction == MAX, k)


def _extreme(node, level, dim, want_max, k):
    if level % k == dim:
        child = node.greater if want_max else node.less
        if child is None:
            return node
        return _extreme(child, level + 1, dim, want_max, k)
    best = node
    for child in (node.less, node.greater):
        if child is not None:
            cand = _extreme(child, level + 1, dim, want_max, k)
            c = _cmp(cand.point, best.point, dim)
            if (c > 0) if want_max else (c < 0):
                best = cand
    return best


def insert_into(root, point, level, k, policy, builder=None, stats=None):
    """Insert ``point`` as a new leaf; returns (new root, inserted).

    A tuple already present leaves the subtree unchanged.
    """
    if builder is None:
        builder = build_balanced
    if root is None:
        return Node(point), True
    c = _cmp(point, root.point, level % k)
    if c == 0:
        return root, False
    if c < 0:
        root.less, added = insert_into(
            root.less, point, level + 1, k, policy, builder, stats
        )
    else:
        root.greater, added = insert_into(
            root.greater, point, level + 1, k, policy, builder, stats
        )
    if added:
        root = _restore(root, level, k, policy, builder, stats)
    return root, added


def delete_from(root, point, level, k, policy, strategy, builder=None, stats=None):
    """Delete ``point`` if present; returns (new root, removed)."""
    if builder is None:
        builder = build_balanced
    if root is None:
        return None, False
    c = _cmp(point, root.point, level % k)
    if c == 0:
        return _remove(root, level, k, policy, strategy, builder, stats), True
    if c < 0:
        root.less, removed = delete_from(
            root.less, point, level + 1, k, policy, strategy, builder, stats
        )
    else:
        root.greater, removed = delete_from(
            root.greater, point, level + 1, k, policy, strategy, builder, stats
        )
    if removed:
        root = _restore(root, level, k, policy, builder, stats)
    return root, removed


def _remove(node, level, k, policy, strategy, builder, stats):
    """Unlink the found node by the applicable deletion case.

    A subtree of height <= 2 holds at most 3 nodes, so recursion is
    curtailed there and the survivors rebuilt directly.  Otherwise the
    node's tuple is replaced by its in-subtree predecessor or successor at
    the node's discriminant, and the replacement tuple is deleted
    recursively from the child it came from.
    """
    if node.height <= 2:
        remaining = collect_subtree(node.less) + collect_subtree(node.greater)
        if stats is not None:
            stats.record(len(remaining))
        return rebuild_small(remaining, level)

    dim = level % k
    if node.less is not None and node.greater is not None:
        use_predecessor = (
            strategy == HIGHER_SUBTREE and node.less.height > node.greater.height
        )
    else:
        use_predecessor = node.greater is None

    if use_predecessor:
        repl = _extreme(node.less, level + 1, dim, True, k)
        node.point = repl.point
        node.less, _ = delete_from(
            node.less, repl.point, level + 1, k, policy, strategy, builder, stats
        )
    else:
        repl = _extreme(node.greater, level + 1, dim, False, k)
        node.point = repl.point
        node.greater, _ = delete_from(
            node.greater, repl.point, level + 1, k, policy, strategy, builder, stats
        )
    return _restore(node, level, k, policy, builder, stats)


def _restore(node, level, k, policy, builder, stats):
    """Recompute the cached height; rebuild the subtree if out of balance."""
    hl = node.less.height if node.less is not None else 0
    hr = node.greater.height if node.greater is not None else 0
    if is_balanced(policy, hl, hr):
        node.height = 1 + (hl if hl > hr else hr)
        return node
    tuples = collect_subtree(node)
    if stats is not None:
        stats.record(len(tuples))
    if len(tuples) <= 3:
        return rebuild_small(tuples, level)
    return builder(tuples, level)
