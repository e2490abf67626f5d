"""Random calls of the witness constructions, each re-verified from outside."""

from __future__ import annotations

import random
from typing import List, Tuple

from ..core.errors import EmptyIntervalError
from ..core.linear import (
    INFINITY,
    MINUS_INFINITY,
    PLUS_INFINITY,
    ZERO,
    Interval,
    Ordering,
    Vector,
)
from ..core.tower import Model, compare, is_value, valuate
from ..core.witness import (
    dense_pair_witness,
    density_witness,
    independence_witness,
    interval_contains,
    nonvalue_witness,
)
from .report import Report, SuiteConfig, render_inputs, run_trials
from .sampling import random_element, random_model

OPERATIONS = ("density", "independence", "nonvalue", "densepair")


def sample_pair(
    cfg: SuiteConfig, rng: random.Random, model: Model, order: int
) -> Tuple[Vector, Vector]:
    """Two elements with a <_order b, drawing again on ties."""
    for _ in range(cfg.retry_cap):
        a = random_element(rng, model, cfg.max_support, cfg.scalar_height)
        b = random_element(rng, model, cfg.max_support, cfg.scalar_height)
        outcome = compare(model, a, b, order)
        if outcome is Ordering.LESS:
            return a, b
        if outcome is Ordering.GREATER:
            return b, a
    raise EmptyIntervalError(f"no two distinct elements found in order {order}")


def sample_interval(
    cfg: SuiteConfig, rng: random.Random, model: Model, order: int
) -> Interval:
    lo, hi = sample_pair(cfg, rng, model, order)
    roll = rng.random()
    if roll < 0.15:
        return MINUS_INFINITY, hi
    if roll < 0.3:
        return lo, PLUS_INFINITY
    if roll < 0.35:
        return MINUS_INFINITY, PLUS_INFINITY
    return lo, hi


def _snapshot(cfg: SuiteConfig, rng: random.Random, model: Model) -> List[tuple]:
    """Comparisons and values among existing elements, to re-check after extension."""
    facts = []
    for _ in range(cfg.samples):
        x = random_element(rng, model, cfg.max_support, cfg.scalar_height)
        y = random_element(rng, model, cfg.max_support, cfg.scalar_height)
        orders = tuple(compare(model, x, y, i) for i in range(model.orders))
        value = valuate(model, x) if model.is_hamel else None
        facts.append((x, y, orders, value))
    return facts


def _check_conservative(report: Report, before: Model, after: Model, facts) -> None:
    for x, y, orders, value in facts:
        now = tuple(compare(after, x, y, i) for i in range(after.orders))
        inputs = render_inputs(after, x=x, y=y, prefix=str(before.size))
        report.check(now == orders, inputs, str(orders), str(now))
        if value is not None:
            report.check(valuate(after, x) == value, inputs, str(value), str(valuate(after, x)))


def _witness_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    operation = OPERATIONS[trial % len(OPERATIONS)]
    hamel = operation != "independence" or rng.random() < 0.5
    size = rng.randint(2, max(2, cfg.max_generators))
    model = random_model(rng, size, hamel=hamel, max_support=cfg.max_support)
    facts = _snapshot(cfg, rng, model)
    report.count(operation)

    if operation in ("density", "densepair"):
        a, b = sample_pair(cfg, rng, model, 0)
        if operation == "density":
            extended, h = density_witness(model, a, b)
            w = extended.generator(h)
        else:
            extended, w = dense_pair_witness(model, a, b)
        inputs = render_inputs(extended, a=a, b=b, witness=w)
        report.check(
            compare(extended, a, w, 0) is Ordering.LESS
            and compare(extended, w, b, 0) is Ordering.LESS,
            inputs,
            "a <0 w <0 b",
            "outside",
        )
        if operation == "density":
            value = valuate(extended, w)
            report.check(is_value(extended, w), inputs, "v(w) = w", extended.format(value))
        else:
            value = valuate(extended, w)
            report.check(
                value is not INFINITY
                and compare(extended, value, ZERO, 0) is Ordering.GREATER,
                inputs,
                "v(w) >0 0",
                extended.format(value),
            )
    else:
        intervals = [sample_interval(cfg, rng, model, i) for i in range(model.orders)]
        if operation == "independence":
            extended, w = independence_witness(model, *intervals)
        else:
            extended, w = nonvalue_witness(model, *intervals)
        rendered = {f"iv{i}": _render_interval(extended, iv) for i, iv in enumerate(intervals)}
        inputs = render_inputs(extended, witness=w, **rendered)
        for order, interval in enumerate(intervals):
            report.check(
                interval_contains(extended, interval, w, order),
                inputs,
                f"inside iv{order}",
                "outside",
            )
        if operation == "nonvalue":
            report.check(not is_value(extended, w), inputs, "v(w) != w", "w is a value")
    _check_conservative(report, model, extended, facts)
    return report


def _render_interval(model: Model, interval: Interval) -> str:
    lo, hi = interval
    ends = [str(e) if not isinstance(e, Vector) else model.format(e) for e in (lo, hi)]
    return f"({ends[0]}, {ends[1]})"


def run_witness_suite(cfg: SuiteConfig) -> Report:
    return run_trials(cfg, _witness_trial)
