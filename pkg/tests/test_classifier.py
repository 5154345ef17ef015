import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoterm import (
    ClassKind,
    Direction,
    NonMonotoneUpdateError,
    Update,
    classify,
    closed_form,
)


def iterate(upd: Update, x0: int, n: int) -> int:
    x = x0
    for _ in range(n):
        x = upd.apply(x)
    return x


def test_arithmetic_up():
    cls = classify(Update(1, 1), 15)
    assert cls.kind is ClassKind.ARITHMETIC
    assert cls.direction is Direction.UP
    assert cls.step == 1


def test_geometric_up():
    cls = classify(Update(2, 0), 3)
    assert (cls.kind, cls.direction, cls.ratio) == (ClassKind.GEOMETRIC, Direction.UP, 2)


def test_affine_down_from_negative_start():
    # rate 2, offset 1 from -5: first difference (2-1)*(-5)+1 = -4 < 0
    cls = classify(Update(2, 1), -5)
    assert (cls.kind, cls.direction) == (ClassKind.AFFINE, Direction.DOWN)
    values = [iterate(Update(2, 1), -5, n) for n in range(10)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_identity_is_constant():
    cls = classify(Update(1, 0), 7)
    assert (cls.kind, cls.direction, cls.pinned) == (ClassKind.CONSTANT, Direction.FLAT, 7)


def test_direct_assignment_is_constant():
    assert classify(Update(0, 9), 100).pinned == 9


def test_geometric_from_zero_collapses_to_constant():
    assert classify(Update(2, 0), 0).kind is ClassKind.CONSTANT


def test_affine_fixed_point_collapses_to_constant():
    # x := 2x + 4 fixes -4
    cls = classify(Update(2, 4), -4)
    assert (cls.kind, cls.pinned) == (ClassKind.CONSTANT, -4)


def test_negative_coefficient_rejected():
    with pytest.raises(NonMonotoneUpdateError):
        classify(Update(-1, 0), 5)
    with pytest.raises(NonMonotoneUpdateError):
        classify(Update(-2, 3), 2)


def test_negative_coefficient_fixed_point_is_constant():
    # x := -x + 2 fixes 1; the orbit from 1 never moves
    assert classify(Update(-1, 2), 1).kind is ClassKind.CONSTANT


def test_closed_form_examples():
    assert closed_form(classify(Update(1, -1), 15), 15, 5) == 10
    assert closed_form(classify(Update(2, 0), 3), 3, 4) == 48
    cls = classify(Update(2, 1), 1)
    assert closed_form(cls, 1, 3) == iterate(Update(2, 1), 1, 3) == 15


def test_constant_closed_form_zero_vs_later():
    cls = classify(Update(0, 9), 5)
    assert closed_form(cls, 5, 0) == 5
    assert closed_form(cls, 5, 1) == closed_form(cls, 5, 10) == 9


updates = st.tuples(st.integers(0, 4), st.integers(-10, 10)).map(lambda t: Update(*t))


@given(updates, st.integers(-50, 50), st.integers(0, 40))
def test_closed_form_agrees_with_iteration(upd, x0, n):
    cls = classify(upd, x0)
    assert closed_form(cls, x0, n) == iterate(upd, x0, n)


@given(updates, st.integers(-50, 50))
def test_direction_soundness(upd, x0):
    cls = classify(upd, x0)
    values = [closed_form(cls, x0, n) for n in range(0, 101)]
    pairs = list(zip(values, values[1:]))
    if cls.direction is Direction.UP:
        assert all(b > a for a, b in pairs)
    elif cls.direction is Direction.DOWN:
        assert all(b < a for a, b in pairs)
    else:
        assert all(b == a for a, b in pairs[1:])  # first step may jump to the pinned value


@given(st.integers(-5, 5), st.integers(-10, 10), st.integers(-30, 30))
def test_classifier_totality(u, v, x0):
    upd = Update(u, v)
    try:
        cls = classify(upd, x0)
    except NonMonotoneUpdateError:
        assert u < 0 and upd.first_difference(x0) != 0
        return
    if cls.kind is ClassKind.ARITHMETIC:
        assert cls.step != 0
    elif cls.kind is ClassKind.GEOMETRIC:
        assert cls.ratio > 1 and x0 != 0
    elif cls.kind is ClassKind.AFFINE:
        assert cls.ratio > 1 and cls.step != 0
