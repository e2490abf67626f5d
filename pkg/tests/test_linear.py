from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamel_spaces.core.errors import ExpressionSyntaxError, ModelMismatchError, ScalarDivisionError
from hamel_spaces.core.linear import (
    INFINITY,
    ZERO,
    ModelToken,
    Ordering,
    Vector,
    add,
    compare_scalars,
    div,
    format_scalar,
    merge_owners,
    mul,
    parse_scalar,
    point_combine,
    vec_combine,
)

F = Fraction


def test_scalar_arithmetic_is_exact():
    """Rational arithmetic never rounds."""
    assert add(F(1, 2), F(1, 3)) == F(5, 6)
    assert mul(F(-2, 3), F(3, 4)) == F(-1, 2)
    assert compare_scalars(F(7, 10), F(5, 7)) is Ordering.LESS


def test_division_by_zero():
    with pytest.raises(ScalarDivisionError):
        div(F(1), F(0))
    with pytest.raises(ZeroDivisionError):
        div(F(1), F(0))


def test_parse_scalar():
    assert parse_scalar("-3/6") == F(-1, 2)
    assert parse_scalar(" 4 ") == F(4)
    assert format_scalar(F(3, 2)) == "3/2"
    with pytest.raises(ScalarDivisionError):
        parse_scalar("3/0")
    with pytest.raises(ExpressionSyntaxError):
        parse_scalar("1.5")


def vec(mapping):
    return Vector.from_mapping(mapping)


def test_vec_combine_examples():
    assert vec_combine(1, vec({1: 1}), 1, vec({1: -1})) == ZERO
    assert vec_combine(2, vec({1: F(1, 2)}), 0, vec({2: 5})) == vec({1: 1})
    assert vec_combine(1, vec({1: 1, 2: 2}), -1, vec({2: 2, 3: 1})) == vec({1: 1, 3: -1})


def test_vector_accessors():
    x = vec({0: 2, 3: F(-1, 2)})
    assert x.support == (0, 3)
    assert x.top == 3
    assert x.coefficient(1) == 0
    rest, gen, c = x.split_top()
    assert (rest, gen, c) == (vec({0: 2}), 3, F(-1, 2))
    assert x.format(["a", "b", "c", "d"]) == "2*a + -1/2*d"
    assert ZERO.format() == "0"


def test_point_combine_absorbs_infinity():
    assert point_combine(1, INFINITY, 1, ZERO) is INFINITY
    assert point_combine(1, vec({1: 1}), 1, INFINITY) is INFINITY
    assert point_combine(3, ZERO, 0, ZERO) == ZERO


def test_owner_lineage():
    """Vectors of a model combine with vectors of its extensions, not with strangers."""
    root = ModelToken.fresh()
    child = ModelToken.fresh(root)
    stranger = ModelToken.fresh()
    assert merge_owners(root, child) is child
    assert merge_owners(child, root) is child
    assert merge_owners(None, root) is root
    with pytest.raises(ModelMismatchError):
        merge_owners(child, stranger)
    with pytest.raises(ModelMismatchError):
        Vector.unit(0, root) + Vector.unit(0, stranger)


scalars = st.fractions(min_value=-100, max_value=100, max_denominator=20)
vectors = st.dictionaries(st.integers(0, 5), scalars, max_size=4).map(vec)


@given(vectors, vectors, vectors)
def test_addition_laws(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x + ZERO == x
    assert x - x == ZERO


@given(vectors, vectors, scalars, scalars)
def test_scaling_laws(x, y, a, b):
    assert (x + y).scale(a) == x.scale(a) + y.scale(a)
    assert x.scale(a + b) == x.scale(a) + x.scale(b)
    assert x.scale(a).scale(b) == x.scale(a * b)
    assert x.scale(1) == x
    assert x.scale(0).is_zero
