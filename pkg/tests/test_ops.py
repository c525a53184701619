"""Node-level operation tests, including the worked micro-scenarios."""

import pytest

from dynkd import (
    MAX,
    MIN,
    Node,
    collect_subtree,
    contains_in,
    delete_from,
    find_extreme,
    insert_into,
)
from dynkd.errors import EmptySubtreeError
from dynkd.ops import RebuildStats
from dynkd.policy import ALWAYS_SUCCESSOR, BalancePolicy, HIGHER_SUBTREE
from dynkd.validate import verify_subtree

from conftest import random_tuples
from test_rebuild import FIG2, count_comparisons  # noqa: F401

AVL1 = BalancePolicy.avl(1)


def grow(points, level=0, k=3, policy=AVL1):
    root = None
    for pt in points:
        root, added = insert_into(root, pt, level, k, policy)
        assert added
    return root


def test_insert_into_empty_makes_root_leaf():
    root, added = insert_into(None, (1, 2, 3), 0, 3, AVL1)
    assert added and root.height == 1 and root.point == (1, 2, 3)


def test_duplicate_insert_is_noop():
    root = grow(FIG2, level=2)
    before = collect_subtree(root)
    root2, added = insert_into(root, (8, 3, 2), 2, 3, AVL1)
    assert not added
    assert root2 is root and collect_subtree(root2) == before


def test_unbalancing_insert_rebuilds_subtree():
    """The three-node chain at a z:x:y level rebalances into the
    median-rooted subtree."""
    root = None
    stats = RebuildStats()
    for pt in [(8, 1, 5), (8, 3, 2)]:
        root, _ = insert_into(root, pt, 2, 3, AVL1, stats=stats)
    # chain so far: (8,1,5) -> less (8,3,2); balanced
    assert stats.count == 0 and root.point == (8, 1, 5)
    root, _ = insert_into(root, (9, 2, 1), 2, 3, AVL1, stats=stats)
    assert stats.count == 1 and stats.largest == 3
    assert root.point == (8, 3, 2)
    assert root.less.point == (9, 2, 1)
    assert root.greater.point == (8, 1, 5)
    assert verify_subtree(root, 3, AVL1, level=2).ok


def test_delete_from_rebuilt_subtree_curtails(count_comparisons):  # noqa: F811
    root = grow(FIG2, level=2)
    count_comparisons["n"] = 0
    root, removed = delete_from(root, (8, 3, 2), 2, 3, AVL1, HIGHER_SUBTREE)
    assert removed
    # the two survivors were rebuilt with a single z:x:y comparison
    assert count_comparisons["n"] == 1
    assert root.point == (9, 2, 1)
    assert root.less is None and root.greater.point == (8, 1, 5)


def test_delete_absent_returns_false():
    root = grow(FIG2, level=2)
    root2, removed = delete_from(root, (7, 7, 7), 2, 3, AVL1, HIGHER_SUBTREE)
    assert not removed and root2 is root


def test_delete_only_node_empties_tree():
    root = grow([(5, 5, 5)])
    root, removed = delete_from(root, (5, 5, 5), 0, 3, AVL1, HIGHER_SUBTREE)
    assert removed and root is None


def test_insert_then_delete_round_trip(rng):
    pts = random_tuples(rng, 300, 3)
    root = grow(pts)
    assert all(contains_in(root, pt, 0, 3) for pt in pts)
    for pt in pts:
        root, removed = delete_from(root, pt, 0, 3, AVL1, ALWAYS_SUCCESSOR)
        assert removed
        assert not contains_in(root, pt, 0, 3)
    assert root is None


def test_contains_in_empty():
    assert not contains_in(None, (0, 0, 0), 0, 3)


def test_find_extreme_three_node_examples():
    root = grow(FIG2, level=0)
    assert find_extreme(root, 0, 0, MIN, 3).point == (8, 1, 5)
    assert find_extreme(root, 0, 2, MAX, 3).point == (8, 1, 5)


def test_find_extreme_single_node_any_dim():
    leaf = Node((4, 2, 0))
    for dim in range(3):
        for direction in (MIN, MAX):
            assert find_extreme(leaf, 1, dim, direction, 3) is leaf


def test_find_extreme_rejects_bad_input():
    with pytest.raises(EmptySubtreeError):
        find_extreme(None, 0, 0, MIN, 3)
    root = Node((0, 0, 0))
    with pytest.raises(ValueError):
        find_extreme(root, 0, 3, MIN, 3)
    with pytest.raises(ValueError):
        find_extreme(root, 0, 0, "smallest", 3)


def brute_extreme(points, dim, direction, k):
    key = lambda t: t[dim:] + t[:dim]
    return min(points, key=key) if direction == MIN else max(points, key=key)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_find_extreme_matches_brute_force(k, rng):
    for _ in range(15):
        pts = random_tuples(rng, rng.randint(1, 300), k, span=40)
        root = grow(pts, k=k)
        for dim in range(k):
            for direction in (MIN, MAX):
                got = find_extreme(root, 0, dim, direction, k).point
                assert got == brute_extreme(pts, dim, direction, k)


def test_find_extreme_on_inner_subtrees(rng):
    pts = random_tuples(rng, 200, 3, span=30)
    root = grow(pts)
    for node, level in [(root.less, 1), (root.greater, 1)]:
        if node is None:
            continue
        sub = collect_subtree(node)
        for dim in range(3):
            for direction in (MIN, MAX):
                got = find_extreme(node, level, dim, direction, 3).point
                assert got == brute_extreme(sub, dim, direction, 3)


def test_unwind_restores_balance_after_every_mutation(rng):
    for policy in (AVL1, BalancePolicy.avl(3), BalancePolicy.red_black()):
        for strategy in (HIGHER_SUBTREE, ALWAYS_SUCCESSOR):
            root = None
            pts = random_tuples(rng, 150, 3, span=25)
            for pt in pts:
                root, _ = insert_into(root, pt, 0, 3, policy)
                assert verify_subtree(root, 3, policy).ok
            rng.shuffle(pts)
            for pt in pts:
                root, _ = delete_from(root, pt, 0, 3, policy, strategy)
                assert verify_subtree(root, 3, policy).ok
