import itertools
import random

import pytest

from dynkd import (
    DuplicateDatumError,
    KNLOGN,
    NLOGN,
    build_balanced,
    build_parallel,
    collect_subtree,
    rebuild_small,
    same_structure,
    structure,
)
from dynkd import rebuild, superkey
from dynkd.errors import DimensionMismatchError
from dynkd.policy import BalancePolicy
from dynkd.validate import verify_subtree

from conftest import random_tuples

FIG2 = [(9, 2, 1), (8, 3, 2), (8, 1, 5)]


@pytest.fixture
def count_comparisons(monkeypatch):
    """Count super-key comparisons made through the public comparator."""
    counter = {"n": 0}
    real = superkey.compare_superkey

    def counting(a, b, level):
        counter["n"] += 1
        return real(a, b, level)

    monkeypatch.setattr(superkey, "compare_superkey", counting)
    return counter


def test_small_empty_and_single():
    assert rebuild_small([], 0) is None
    leaf = rebuild_small([(8, 1, 5)], 4)
    assert leaf.point == (8, 1, 5) and leaf.height == 1
    assert leaf.less is None and leaf.greater is None


def test_small_two_tuples_lower_median_is_root():
    # z:x:y keys 1:9:2 < 5:8:1
    root = rebuild_small([(8, 1, 5), (9, 2, 1)], 2)
    assert root.point == (9, 2, 1)
    assert root.less is None
    assert root.greater.point == (8, 1, 5)
    assert root.height == 2


def test_small_three_tuples_median_is_root():
    # z:x:y order 1:9:2 < 2:8:3 < 5:8:1
    root = rebuild_small(FIG2, 2)
    assert root.point == (8, 3, 2)
    assert root.less.point == (9, 2, 1)
    assert root.greater.point == (8, 1, 5)
    assert root.height == 2


def test_small_comparison_budget(count_comparisons):
    for tuples, budget in [
        ([], 0),
        ([(1, 1, 1)], 0),
        ([(8, 1, 5), (9, 2, 1)], 1),
        (FIG2, 3),
    ]:
        count_comparisons["n"] = 0
        rebuild_small(tuples, 2)
        assert count_comparisons["n"] <= budget


def test_small_rejects_more_than_three():
    with pytest.raises(ValueError):
        rebuild_small([(i, i, i) for i in range(4)], 0)


@pytest.mark.parametrize("variant", [KNLOGN, NLOGN])
def test_build_seven_on_diagonal(variant):
    root = build_balanced([(i, i, i) for i in range(1, 8)], 0, variant=variant)
    assert root.point == (4, 4, 4)
    assert root.height == 3
    assert root.less.point == (2, 2, 2)
    assert root.greater.point == (6, 6, 6)
    report = verify_subtree(root, 3, BalancePolicy.avl(1))
    assert report.ok and report.node_count == 7


def test_build_empty():
    assert build_balanced([], 0) is None


@pytest.mark.parametrize("variant", [KNLOGN, NLOGN])
def test_build_three_matches_small_path(variant):
    assert same_structure(
        build_balanced(FIG2, 2, variant=variant), rebuild_small(FIG2, 2)
    )


def test_build_rejects_duplicates():
    with pytest.raises(DuplicateDatumError) as exc:
        build_balanced([(1, 2, 3), (4, 5, 6), (1, 2, 3)], 0)
    assert exc.value.point == (1, 2, 3)


def test_build_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatchError):
        build_balanced([(1, 2, 3), (4, 5)], 0)


def test_build_rejects_unknown_variant():
    with pytest.raises(ValueError):
        build_balanced([(1, 2, 3)], 0, variant="quickselect")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_build_properties_on_random_sets(k, rng):
    for trial in range(20):
        pts = random_tuples(rng, rng.randint(1, 200), k, span=50)
        level = rng.randrange(2 * k)
        a = build_balanced(pts, level, variant=KNLOGN)
        b = build_balanced(pts, level, variant=NLOGN)
        assert same_structure(a, b)
        assert sorted(collect_subtree(a)) == sorted(pts)
        report = verify_subtree(a, k, BalancePolicy.avl(1), level=level)
        assert report.ok, report.describe()


def test_small_matches_build_on_random_samples(rng):
    for _ in range(200):
        pts = random_tuples(rng, rng.randint(0, 3), 3, span=4)
        level = rng.randrange(3)
        assert same_structure(rebuild_small(pts, level), build_balanced(pts, level))


def test_parallel_single_worker_is_sequential(rng):
    pts = random_tuples(rng, 500, 3)
    assert structure(build_parallel(pts, 0, workers=1)) == structure(
        build_balanced(pts, 0)
    )


def test_parallel_output_independent_of_worker_count(rng):
    pts = random_tuples(rng, 3000, 3)
    base = structure(build_balanced(pts, 1))
    for workers in (2, 3, 4, 8):
        built = build_parallel(pts, 1, workers=workers, threshold=100)
        assert structure(built) == base


def test_parallel_below_threshold_never_spawns(monkeypatch, rng):
    spawned = []
    real_thread = rebuild.threading.Thread

    def tracking(*args, **kwargs):
        spawned.append(1)
        return real_thread(*args, **kwargs)

    monkeypatch.setattr(rebuild.threading, "Thread", tracking)
    pts = random_tuples(rng, 1000, 3)
    build_parallel(pts, 0, workers=8)  # default threshold far above 1000
    assert spawned == []
    build_parallel(pts, 0, workers=8, threshold=200)
    assert spawned


def test_parallel_determinism_across_runs(rng):
    pts = random_tuples(rng, 2000, 2)
    first = structure(build_parallel(pts, 0, workers=4, threshold=128))
    for _ in range(3):
        again = structure(build_parallel(pts, 0, workers=4, threshold=128))
        assert again == first


def test_build_child_height_gap_at_most_one(rng):
    pts = random_tuples(rng, 777, 3)
    root = build_balanced(pts, 0)

    def walk(node):
        if node is None:
            return 0
        hl = walk(node.less)
        hr = walk(node.greater)
        assert abs(hl - hr) <= 1
        return 1 + max(hl, hr)

    walk(root)
