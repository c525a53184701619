"""Tree nodes and structural helpers for the pure-Python kernel."""


class Node:
    """One stored tuple plus child links and a cached subtree height.

    Height counts nodes on the longest downward path: a leaf has height 1
    and an absent child contributes 0.
    """

    __slots__ = ("point", "less", "greater", "height")

    def __init__(self, point, less=None, greater=None, height=1):
        self.point = point
        self.less = less
        self.greater = greater
        self.height = height

    def __repr__(self):
        return f"Node({self.point}, h={self.height})"


def node_height(link):
    """Height of a possibly-absent child link (0 for None)."""
    return 0 if link is None else link.height


def collect_subtree(root):
    """All tuples in the subtree, in in-order (less, node, greater) order."""
    out = []
    _collect(root, out)
    return out


def _collect(node, out):
    if node is not None:
        _collect(node.less, out)
        out.append(node.point)
        _collect(node.greater, out)


def structure(root):
    """Nested-tuple snapshot (point, height, less, greater) of a subtree.

    Two subtrees are structurally identical iff their snapshots are equal.
    """
    if root is None:
        return None
    return (root.point, root.height, structure(root.less), structure(root.greater))


def same_structure(a, b):
    """True iff two subtrees are node-for-node identical."""
    if a is None or b is None:
        return a is None and b is None
    return (
        a.point == b.point
        and a.height == b.height
        and same_structure(a.less, b.less)
        and same_structure(a.greater, b.greater)
    )


def copy_subtree(root):
    """Deep copy of a subtree (fresh nodes, same points and heights)."""
    if root is None:
        return None
    return Node(
        root.point, copy_subtree(root.less), copy_subtree(root.greater), root.height
    )


def count_nodes(root):
    if root is None:
        return 0
    return 1 + count_nodes(root.less) + count_nodes(root.greater)
