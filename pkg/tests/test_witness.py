import pytest

from hamel_spaces.core.errors import EmptyIntervalError, ModeError
from hamel_spaces.core.linear import MINUS_INFINITY, PLUS_INFINITY, UNBOUNDED, ZERO, Ordering
from hamel_spaces.core.tower import BallGen, Model, compare, is_value, less, valuate
from hamel_spaces.core.witness import (
    bound_less,
    dense_pair_witness,
    density_witness,
    independence_witness,
    interval_contains,
    nonvalue_witness,
)


def between(model, a, x, b, order):
    return less(model, a, x, order) and less(model, x, b, order)


def test_density_witness_between_values(m1, el):
    model, h = density_witness(m1, el("h1"), el("h2"))
    value = model.generator(h)
    assert between(model, el("h1"), value, el("h2"), 0)
    assert is_value(model, value)
    assert model.names[h] == "h3"


def test_density_witness_above_zero(m1, el):
    model, h = density_witness(m1, ZERO, el("h1"))
    assert between(model, ZERO, model.generator(h), el("h1"), 0)


def test_density_witness_rejects_empty_interval(m1, el):
    with pytest.raises(EmptyIntervalError):
        density_witness(m1, el("h1"), el("h1"))
    with pytest.raises(EmptyIntervalError):
        density_witness(m1, el("h2"), el("h1"))


def test_independence_witness_in_m1(m1, el):
    model, z = independence_witness(m1, (el("h1"), el("h2")), (el("t"), el("h1")))
    assert between(model, el("h1"), z, el("h2"), 0)
    assert between(model, el("t"), z, el("h1"), 1)


def test_independence_witness_with_infinite_ends(m1, el):
    model, z = independence_witness(m1, (el("h2"), PLUS_INFINITY), (MINUS_INFINITY, el("h2")))
    assert less(model, el("h2"), z, 0)
    assert less(model, z, el("h2"), 1)
    model, z = independence_witness(Model.hamel())
    assert interval_contains(model, UNBOUNDED, z, 0)


def test_independence_witness_in_plain_mode():
    """One free generator realizes both intervals at once."""
    model, z = independence_witness(Model.plain(2), (ZERO, PLUS_INFINITY), (MINUS_INFINITY, ZERO))
    assert less(model, ZERO, z, 0)
    assert less(model, z, ZERO, 1)
    assert model.size == 1


def test_independence_witness_rejects_empty_interval(m1, el):
    with pytest.raises(EmptyIntervalError):
        independence_witness(m1, UNBOUNDED, (el("h1"), el("h1")))
    with pytest.raises(ModeError):
        independence_witness(Model.plain(1), UNBOUNDED, UNBOUNDED)


def test_nonvalue_witness(m1, el):
    interval = (ZERO, el("h1"))
    model, z = nonvalue_witness(m1, interval, interval)
    assert between(model, ZERO, z, el("h1"), 0)
    assert between(model, ZERO, z, el("h1"), 1)
    assert valuate(model, z) != z


def test_nonvalue_witness_retries_above_a_value_candidate(m1, el):
    """h1 lies in both intervals and is a value, so a second witness is built above it."""
    interval = (ZERO, el("2*h1"))
    model, z = nonvalue_witness(m1, interval, interval)
    assert model.size == m1.size + 2
    assert isinstance(model.gens[z.top], BallGen)
    assert not is_value(model, z)
    assert valuate(model, z) == el("h1")
    assert between(model, el("h1"), z, el("2*h1"), 0)
    assert between(model, el("h1"), z, el("2*h1"), 1)


def test_nonvalue_witness_reuses_an_existing_generator(m1, el):
    model, z = nonvalue_witness(m1, (el("h2"), PLUS_INFINITY), UNBOUNDED)
    assert model is m1
    assert z == el("t")


def test_nonvalue_witness_rejects_degenerate_interval(m1, el):
    with pytest.raises(EmptyIntervalError):
        nonvalue_witness(m1, (el("h1"), ZERO), UNBOUNDED)
    with pytest.raises(ModeError):
        nonvalue_witness(Model.plain(2), UNBOUNDED, UNBOUNDED)


def test_dense_pair_witness(m1, el):
    model, s = dense_pair_witness(m1, el("h1"), el("h2"))
    assert between(model, el("h1"), s, el("h2"), 0)
    assert compare(model, valuate(model, s), ZERO, 0) is Ordering.GREATER
    with pytest.raises(EmptyIntervalError):
        dense_pair_witness(m1, el("h1"), el("h1"))


def test_witnesses_are_conservative(m1, el):
    """Comparisons and values among old elements survive every extension."""
    pairs = [("h1", "h2"), ("t", "h1"), ("h2 + 5*t", "h1 - 3*h2"), ("t", "0")]
    before = {p: [compare(m1, el(p[0]), el(p[1]), i) for i in (0, 1)] for p in pairs}
    model, _ = independence_witness(m1, (el("h1"), el("h2")), (el("t"), el("h1")))
    model, _ = dense_pair_witness(model, ZERO, el("h1"))
    for p, orders in before.items():
        assert [compare(model, el(p[0]), el(p[1]), i) for i in (0, 1)] == orders
    assert valuate(model, el("h2 + 5*t")) == el("h1")


def test_bound_less():
    model = Model.plain(2)
    assert bound_less(model, MINUS_INFINITY, PLUS_INFINITY, 0)
    assert bound_less(model, MINUS_INFINITY, ZERO, 1)
    assert not bound_less(model, PLUS_INFINITY, ZERO, 0)
    assert not bound_less(model, ZERO, ZERO, 0)
