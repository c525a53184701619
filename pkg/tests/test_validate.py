from dynkd import BalancePolicy, Node, build_balanced, verify_subtree
from dynkd.validate import BALANCE, HEIGHT, ORDERING

from conftest import random_tuples

AVL1 = BalancePolicy.avl(1)


def chain_fig1():
    """The unbalanced 3-node chain rooted at a z:x:y level, heights cached."""
    bottom = Node((9, 2, 1), height=1)
    middle = Node((8, 3, 2), greater=bottom, height=2)
    return Node((8, 1, 5), less=middle, height=3)


def test_empty_tree_report():
    report = verify_subtree(None, 3, AVL1)
    assert report.ok
    assert report.node_count == 0 and report.tree_height == 0


def test_unbalanced_chain_has_exactly_one_balance_violation():
    report = verify_subtree(chain_fig1(), 3, AVL1, level=2)
    assert report.node_count == 3 and report.tree_height == 3
    assert len(report.violations) == 1
    v = report.violations[0]
    assert v.kind == BALANCE
    assert v.path == "root"
    assert "(8, 1, 5)" in v.detail


def test_chain_is_balanced_under_looser_policies():
    for policy in (BalancePolicy.avl(2), BalancePolicy.avl(4)):
        assert verify_subtree(chain_fig1(), 3, policy, level=2).ok
    # red-black with an absent child falls back to the AVL-1 test
    report = verify_subtree(chain_fig1(), 3, BalancePolicy.red_black(), level=2)
    assert [v.kind for v in report.violations] == [BALANCE]


def test_cached_height_violation():
    root = chain_fig1()
    root.less.height = 3  # one too high
    report = verify_subtree(root, 3, AVL1, level=2)
    kinds = sorted(v.kind for v in report.violations)
    assert HEIGHT in kinds
    bad = [v for v in report.violations if v.kind == HEIGHT]
    assert [v.path for v in bad] == ["root.less"]


def test_ordering_violation_located():
    # (9,9,9) placed in the less subtree of (5,5,5)
    root = Node((5, 5, 5), less=Node((9, 9, 9)), height=2)
    report = verify_subtree(root, 3, AVL1)
    assert [v.kind for v in report.violations] == [ORDERING]
    assert report.violations[0].path == "root.less"


def test_ordering_checks_span_levels():
    # grandchild violates the root's bound at the root's dimension:
    # (6,0,0) sits in root.less but compares greater than (5,5,5) at dim 0
    grand = Node((6, 0, 0))
    child = Node((4, 9, 9), greater=grand, height=2)
    root = Node((5, 5, 5), less=child, height=3)
    report = verify_subtree(root, 3, BalancePolicy.avl(2))
    assert [v.kind for v in report.violations] == [ORDERING]
    assert report.violations[0].path == "root.less.greater"


def test_valid_random_trees_verify_clean(rng):
    for k in (1, 2, 3):
        pts = random_tuples(rng, 500, k)
        root = build_balanced(pts, 0)
        for policy in (AVL1, BalancePolicy.red_black()):
            report = verify_subtree(root, k, policy)
            assert report.ok, report.describe()
            assert report.node_count == 500


def test_describe_output():
    report = verify_subtree(chain_fig1(), 3, AVL1, level=2)
    text = report.describe()
    assert "3 nodes" in text and "balance" in text
    clean = verify_subtree(None, 3, AVL1)
    assert "no violations" in clean.describe()
