import pytest
from hypothesis import given, strategies as st

from dynkd import BalancePolicy, Node, is_balanced, node_height

height = st.integers(min_value=0, max_value=64)


def test_node_height_absent_link_is_zero():
    assert node_height(None) == 0


def test_node_height_leaf_is_one():
    assert node_height(Node((1, 2, 3))) == 1


def test_node_height_reads_cache():
    node = Node((0, 0, 0), less=Node((1, 1, 1), height=2), greater=Node((2, 2, 2)))
    node.height = 3
    assert node_height(node) == 3


def test_avl_rejects_difference_of_two():
    assert not is_balanced(BalancePolicy.avl(1), 1, 3)


def test_red_black_accepts_factor_exactly_two():
    assert is_balanced(BalancePolicy.red_black(), 4, 2)
    assert not is_balanced(BalancePolicy.red_black(), 5, 2)


def test_red_black_null_child_fallback():
    # one absent child reverts to the AVL difference-1 test
    assert not is_balanced(BalancePolicy.red_black(), 0, 2)
    assert is_balanced(BalancePolicy.red_black(), 0, 1)


def test_leaf_is_balanced_under_every_policy():
    for policy in [BalancePolicy.avl(d) for d in (1, 2, 3, 4)] + [
        BalancePolicy.red_black()
    ]:
        assert is_balanced(policy, 0, 0)


@given(height, height, st.integers(min_value=1, max_value=3))
def test_avl_monotonicity(hl, hr, diff):
    if is_balanced(BalancePolicy.avl(diff), hl, hr):
        assert is_balanced(BalancePolicy.avl(diff + 1), hl, hr)


@given(height, height)
def test_symmetry(hl, hr):
    for policy in (BalancePolicy.avl(2), BalancePolicy.red_black()):
        assert is_balanced(policy, hl, hr) == is_balanced(policy, hr, hl)


def test_policy_validation():
    with pytest.raises(ValueError):
        BalancePolicy.avl(5)
    with pytest.raises(ValueError):
        BalancePolicy.avl(0)
    with pytest.raises(ValueError):
        BalancePolicy("weighted")


@pytest.mark.parametrize("label", ["avl1", "avl2", "avl3", "avl4", "redblack"])
def test_labels_round_trip(label):
    assert BalancePolicy.from_label(label).label == label


def test_unknown_label_rejected():
    with pytest.raises(ValueError):
        BalancePolicy.from_label("avl9")
