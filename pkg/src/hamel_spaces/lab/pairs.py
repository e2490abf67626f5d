"""The value set H, the generalized ball S and the discrete sets above a value."""

from __future__ import annotations

import random
from typing import List

from ..core.linear import INFINITY, ZERO, Ordering, Point, Vector
from ..core.tower import Model, abs_order, compare, is_value, less, valuate
from ..core.witness import dense_pair_witness, density_witness
from ..logic.evaluate import evaluate_qf
from ..logic.parser import parse_formula
from .report import Report, SuiteConfig, render_inputs, run_trials
from .sampling import random_element, random_model, random_point, random_scalar
from .witnesses import sample_pair

VALUE_SET = "!(x = inf) & v(x) = x"
GENERALIZED_BALL = "0 <0 v(x)"


def in_value_set(model: Model, x: Point) -> bool:
    return is_value(model, x)


def in_generalized_ball(model: Model, x: Point) -> bool:
    value = valuate(model, x)
    return value is INFINITY or compare(model, value, ZERO, 0) is Ordering.GREATER


def _predicates(cfg: SuiteConfig, rng: random.Random, report: Report, model: Model) -> None:
    formulas = {
        VALUE_SET: (parse_formula(VALUE_SET, orders=2), in_value_set),
        GENERALIZED_BALL: (parse_formula(GENERALIZED_BALL, orders=2), in_generalized_ball),
    }
    for _ in range(cfg.samples):
        x = random_point(rng, model, cfg.max_support, cfg.scalar_height)
        for text, (formula, direct) in formulas.items():
            by_formula = evaluate_qf(model, formula, {"x": x})
            expected = direct(model, x)
            report.check(
                by_formula == expected,
                render_inputs(model, x=x, formula=text),
                str(expected),
                str(by_formula),
            )
            report.count("predicate_points")


def _ball_closure(
    cfg: SuiteConfig, rng: random.Random, report: Report, model: Model
) -> Model:
    members: List[Vector] = []
    for _ in range(2):
        a, b = sample_pair(cfg, rng, model, 0)
        model, s = dense_pair_witness(model, a, b)
        members.append(s)
    members.extend(g for g in _generators(model) if in_generalized_ball(model, g))
    for _ in range(cfg.samples):
        s1, s2 = rng.choice(members), rng.choice(members)
        c1, c2 = random_scalar(rng, cfg.scalar_height), random_scalar(rng, cfg.scalar_height)
        combination = s1.scale(c1) + s2.scale(c2)
        report.check(
            in_generalized_ball(model, combination),
            render_inputs(model, s1=s1, s2=s2, c1=str(c1), c2=str(c2)),
            "combination stays in S",
            model.format(valuate(model, combination)),
        )
        report.count("closure_combinations")
    return model


def _generators(model: Model) -> List[Vector]:
    return [model.generator(g) for g in range(model.size)]


def _dense_witnesses(
    cfg: SuiteConfig, rng: random.Random, report: Report, model: Model
) -> Model:
    a, b = sample_pair(cfg, rng, model, 0)
    model, h = density_witness(model, a, b)
    value = model.generator(h)
    inputs = render_inputs(model, a=a, b=b, h=value)
    report.check(
        less(model, a, value, 0) and less(model, value, b, 0) and is_value(model, value),
        inputs,
        "value strictly between a and b",
        "not",
    )
    model, s = dense_pair_witness(model, a, b)
    report.check(
        less(model, a, s, 0) and less(model, s, b, 0) and in_generalized_ball(model, s),
        render_inputs(model, a=a, b=b, s=s),
        "S-element strictly between a and b",
        "not",
    )
    return model


def _value_gap(report: Report, model: Model) -> None:
    """No value lies strictly between h and 2h in <_1."""
    values = model.values
    for h in values:
        double = h.scale(2)
        for other in values:
            inside = less(model, h, other, 1) and less(model, other, double, 1)
            report.check(
                not inside,
                render_inputs(model, h=h, other=other),
                "outside (h, 2h)_1",
                "inside",
            )
            report.count("gap_pairs")


def _discrete_members(
    cfg: SuiteConfig, rng: random.Random, report: Report, model: Model
) -> Model:
    """Values above g, where g >0 v(eps), all lie in (0, eps)_1."""
    eps = abs_order(model, random_element(rng, model, cfg.max_support, cfg.scalar_height), 1)
    if eps.is_zero:
        return model
    floor = valuate(model, eps)
    step = abs_order(model, eps, 0)
    model, g_id = density_witness(model, floor, floor + step)
    g = model.generator(g_id)
    for _ in range(rng.randint(1, 3)):
        model, _ = density_witness(model, g, g + step)
    members = [h for h in model.values if less(model, g, h, 0)]
    for x in members:
        report.check(
            less(model, ZERO, x, 1) and less(model, x, eps, 1),
            render_inputs(model, eps=eps, g=g, x=x),
            "x in (0, eps)_1",
            "outside",
        )
        report.count("discrete_members")
    return model


def _pair_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    size = rng.randint(2, max(2, cfg.max_generators))
    model = random_model(rng, size, max_support=cfg.max_support)
    _predicates(cfg, rng, report, model)
    _value_gap(report, model)
    model = _ball_closure(cfg, rng, report, model)
    model = _dense_witnesses(cfg, rng, report, model)
    _discrete_members(cfg, rng, report, model)
    return report


def run_pair_suite(cfg: SuiteConfig) -> Report:
    return run_trials(cfg, _pair_trial)
