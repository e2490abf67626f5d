"""Constructive witnesses: each one extends the model just enough to realize a request."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Tuple

from .errors import EmptyIntervalError, ModeError, WitnessError
from .linear import (
    INFINITY,
    MINUS_INFINITY,
    PLUS_INFINITY,
    UNBOUNDED,
    ZERO,
    Bound,
    BoundEnd,
    GenId,
    Interval,
    Ordering,
    Vector,
)
from .tower import (
    AlphaCut,
    Cut,
    Model,
    ValueGen,
    adjoin_ball,
    adjoin_free,
    adjoin_value,
    compare,
    is_value,
    less,
    min_order,
    valuate,
)

logger = logging.getLogger(__name__)


def bound_less(model: Model, a: Bound, b: Bound, order: int) -> bool:
    if a is MINUS_INFINITY or b is PLUS_INFINITY:
        return not (a is PLUS_INFINITY or b is MINUS_INFINITY)
    if isinstance(a, BoundEnd) or isinstance(b, BoundEnd):
        return False
    return less(model, a, b, order)


def check_interval(model: Model, interval: Interval, order: int) -> None:
    lo, hi = interval
    for end in (lo, hi):
        if isinstance(end, Vector):
            model.require(end)
    if not bound_less(model, lo, hi, order):
        raise EmptyIntervalError(
            f"interval ({_show(model, lo)}, {_show(model, hi)}) is empty in order {order}"
        )


def interval_contains(model: Model, interval: Interval, x: Vector, order: int) -> bool:
    lo, hi = interval
    return bound_less(model, lo, x, order) and bound_less(model, x, hi, order)


def _show(model: Model, b: Bound) -> str:
    return str(b) if isinstance(b, BoundEnd) else model.format(b)


def _verify(condition: bool, what: str) -> None:
    if not condition:
        raise WitnessError(f"witness postcondition failed: {what}")


def density_witness(model: Model, a: Vector, b: Vector) -> Tuple[Model, GenId]:
    """New value h with a <_0 h <_0 b."""
    check_interval(model, (a, b), 0)
    model, h = adjoin_value(model, Cut.weak_below(a))
    value = model.generator(h)
    _verify(less(model, a, value, 0) and less(model, value, b, 0), "a <0 h <0 b")
    return model, h


def _positive_element(model: Model) -> Tuple[Model, Vector]:
    for gen, record in enumerate(model.gens):
        if isinstance(record, ValueGen):
            return model, model.generator(gen)
    model, h = adjoin_value(model, Cut.weak_below(ZERO))
    return model, model.generator(h)


def _finite_bounds(model: Model, interval: Interval) -> Tuple[Model, Vector, Vector]:
    lo, hi = interval
    if isinstance(lo, Vector) and isinstance(hi, Vector):
        return model, lo, hi
    model, p = _positive_element(model)
    if isinstance(lo, Vector):
        return model, lo, lo + p
    if isinstance(hi, Vector):
        return model, hi - p, hi
    return model, -p, p


def _free_cut(interval: Interval, order: int) -> Cut:
    lo, hi = interval
    if isinstance(lo, Vector):
        return Cut.weak_below(lo, order)
    if isinstance(hi, Vector):
        return Cut.strict_below(hi, order)
    return Cut.everything(order)


def independence_witness(model: Model, *intervals: Interval) -> Tuple[Model, Vector]:
    """Element lying in intervals[i] for every order i.

    Plain models get one free generator. Hamel models get a fresh value above
    the valuation of the order-1 width, then a ball generator of that value
    added to the order-1 midpoint; convexity keeps the sum inside the order-1
    interval and the order-0 cut positions it inside the order-0 interval.
    """
    if len(intervals) > model.orders:
        raise ModeError(f"{len(intervals)} intervals for a model with {model.orders} orders")
    intervals = tuple(intervals) + (UNBOUNDED,) * (model.orders - len(intervals))
    for order, interval in enumerate(intervals):
        check_interval(model, interval, order)

    if not model.is_hamel:
        model, gen = adjoin_free(model, [_free_cut(iv, i) for i, iv in enumerate(intervals)])
        z = model.generator(gen)
    else:
        iv0, iv1 = intervals
        model, a1, b1 = _finite_bounds(model, iv1)
        midpoint = (a1 + b1).scale(Fraction(1, 2))
        model, alpha = adjoin_value(model, Cut.weak_below(valuate(model, b1 - a1)))
        a0 = iv0[0]
        cut0 = Cut.weak_below(a0 - midpoint) if isinstance(a0, Vector) else Cut.nothing(0)
        acut = AlphaCut(model.generator(alpha), ZERO, True)
        model, t = adjoin_ball(model, acut, cut0)
        z = midpoint + model.generator(t)
        logger.debug("independence witness %s", model.format(z))

    for order, interval in enumerate(intervals):
        _verify(interval_contains(model, interval, z, order), f"membership in order {order}")
    return model, z


def _existing_member(model: Model, iv0: Interval, iv1: Interval) -> Optional[Vector]:
    for gen in range(model.size):
        g = model.generator(gen)
        if interval_contains(model, iv0, g, 0) and interval_contains(model, iv1, g, 1):
            return g
    return None


def nonvalue_witness(
    model: Model, iv0: Interval, iv1: Interval
) -> Tuple[Model, Vector]:
    """Element of both intervals that is not its own value.

    The first candidate is a generator already inside both intervals, else an
    independence witness. A candidate that is a value z' is replaced by a second
    witness in (z', y0) and (z', min_1(2z', y1)), whose value is still z'.
    """
    if not model.is_hamel:
        raise ModeError("non-value witnesses need a hamel-mode model")
    check_interval(model, iv0, 0)
    check_interval(model, iv1, 1)
    z = _existing_member(model, iv0, iv1)
    if z is None:
        model, z = independence_witness(model, iv0, iv1)
    if is_value(model, z):
        logger.debug("first candidate %s is a value, retrying above it", model.format(z))
        y0, y1 = iv0[1], iv1[1]
        double = z.scale(2)
        upper1 = double if y1 is PLUS_INFINITY else min_order(model, double, y1, 1)
        model, z = independence_witness(model, (z, y0), (z, upper1))
    _verify(valuate(model, z) != z, "z differs from v(z)")
    _verify(interval_contains(model, iv0, z, 0), "membership in order 0")
    _verify(interval_contains(model, iv1, z, 1), "membership in order 1")
    return model, z


def dense_pair_witness(model: Model, a: Vector, b: Vector) -> Tuple[Model, Vector]:
    """Element s with a <_0 s <_0 b whose value is above 0 in <_0."""
    if not model.is_hamel:
        raise ModeError("dense pair witnesses need a hamel-mode model")
    check_interval(model, (a, b), 0)
    model, alpha = adjoin_value(model, Cut.weak_below(ZERO))
    acut = AlphaCut(model.generator(alpha), ZERO, True)
    model, t = adjoin_ball(model, acut, Cut.weak_below(a))
    s = model.generator(t)
    _verify(less(model, a, s, 0) and less(model, s, b, 0), "a <0 s <0 b")
    value = valuate(model, s)
    _verify(value is not INFINITY and compare(model, value, ZERO, 0) is Ordering.GREATER,
            "v(s) >0 0")
    return model, s
