import pytest
from hypothesis import given, strategies as st

from dynkd import EQUAL, GREATER, LESS, compare_superkey
from dynkd.errors import CoordinateRangeError, DimensionMismatchError
from dynkd.superkey import INT64_MAX, INT64_MIN, check_point

coord = st.integers(min_value=INT64_MIN, max_value=INT64_MAX)


def triple(values):
    return st.tuples(values, values, values)


def test_zxy_comparison():
    # z:x:y keys 5:8:1 vs 1:9:2
    assert compare_superkey((8, 1, 5), (9, 2, 1), 2) == GREATER


def test_identical_tuples_compare_equal_at_every_level():
    for level in range(6):
        assert compare_superkey((8, 3, 2), (8, 3, 2), level) == EQUAL


def test_yzx_comparison():
    # y:z:x keys 1:5:8 vs 3:2:8
    assert compare_superkey((8, 1, 5), (8, 3, 2), 1) == LESS


def test_tie_falls_through_to_later_coordinates():
    assert compare_superkey((5, 1, 9), (5, 1, 7), 0) == GREATER
    assert compare_superkey((5, 1, 9), (5, 2, 0), 0) == LESS


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        compare_superkey((1, 2), (1, 2, 3), 0)
    with pytest.raises(DimensionMismatchError):
        compare_superkey((), (), 0)


@given(triple(coord), triple(coord), st.integers(min_value=0, max_value=11))
def test_antisymmetry(a, b, level):
    assert compare_superkey(a, b, level) == -compare_superkey(b, a, level)


@given(triple(coord), triple(coord), st.integers(min_value=0, max_value=5))
def test_rotation_consistency(a, b, level):
    assert compare_superkey(a, b, level) == compare_superkey(a, b, level + 3)


@given(triple(coord), triple(coord), st.integers(min_value=0, max_value=2))
def test_totality(a, b, level):
    c = compare_superkey(a, b, level)
    if a == b:
        assert c == EQUAL
    else:
        assert c in (LESS, GREATER)


@given(
    st.lists(triple(st.integers(min_value=-3, max_value=3)), min_size=3, max_size=3),
    st.integers(min_value=0, max_value=2),
)
def test_transitivity(points, level):
    a, b, c = points
    if compare_superkey(a, b, level) <= 0 and compare_superkey(b, c, level) <= 0:
        assert compare_superkey(a, c, level) <= 0


def test_check_point_accepts_int64_bounds():
    assert check_point([INT64_MIN, 0, INT64_MAX], 3) == (INT64_MIN, 0, INT64_MAX)


def test_check_point_rejects_bad_input():
    with pytest.raises(DimensionMismatchError):
        check_point((1, 2), 3)
    with pytest.raises(CoordinateRangeError):
        check_point((INT64_MAX + 1, 0, 0), 3)
    with pytest.raises(TypeError):
        check_point((1.5, 0, 0), 3)
    with pytest.raises(TypeError):
        check_point((True, 0, 0), 3)
