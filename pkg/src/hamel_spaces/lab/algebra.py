"""Suites for the order laws, the valuation axioms and the value set."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from ..core.basis import subspace_values
from ..core.linear import INFINITY, ZERO, Ordering, Point, Vector
from ..core.oracle import (
    LeadVector,
    lead_compare1,
    lead_sign1,
    lead_valuate,
    lead_value_compare,
)
from ..core.tower import (
    AlphaCut,
    Model,
    abs_order,
    adjoin_ball,
    adjoin_value,
    compare,
    min_order,
    sign,
    valuate,
    valuate_by_extension,
)
from .report import Report, SuiteConfig, render_inputs, run_trials
from .sampling import random_cut, random_element, random_model, random_scalar


def _sample_model(cfg: SuiteConfig, rng: random.Random, minimum: int = 1) -> Model:
    size = rng.randint(minimum, max(minimum, cfg.max_generators))
    return random_model(rng, size, max_support=cfg.max_support)


def _sample(cfg: SuiteConfig, rng: random.Random, model: Model) -> Vector:
    return random_element(rng, model, cfg.max_support, cfg.scalar_height)


def _same_point(a: Point, b: Point) -> bool:
    return a is b if a is INFINITY or b is INFINITY else a == b


# --- axioms ------------------------------------------------------------------


def _order_laws(report: Report, model: Model, x, y, z, lam: Fraction) -> None:
    for order in range(model.orders):
        inputs = render_inputs(model, x=x, y=y, z=z, order=str(order), lam=str(lam))
        xy, yx = compare(model, x, y, order), compare(model, y, x, order)
        report.check(xy is yx.reversed(), inputs, "antisymmetry", f"{xy.name}/{yx.name}")
        report.check((xy is Ordering.EQUAL) == (x == y), inputs, "equal iff same", xy.name)
        translated = compare(model, x + z, y + z, order)
        report.check(translated is xy, inputs, f"translation keeps {xy.name}", translated.name)
        if lam > 0 and sign(model, x, order) is Ordering.GREATER:
            scaled = sign(model, x.scale(lam), order)
            report.check(scaled is Ordering.GREATER, inputs, "lam*x > 0", scaled.name)
        if xy is Ordering.LESS and compare(model, y, z, order) is Ordering.LESS:
            xz = compare(model, x, z, order)
            report.check(xz is Ordering.LESS, inputs, "transitivity x < z", xz.name)


def _hamel_axioms(report: Report, model: Model, x, y, lam: Fraction) -> None:
    inputs = render_inputs(model, x=x, y=y, lam=str(lam))
    vx, vy, vs = valuate(model, x), valuate(model, y), valuate(model, x + y)
    report.check((vx is INFINITY) == x.is_zero, inputs, "v(x) = inf iff x = 0", model.format(vx))
    lower = min_order(model, vx, vy, 0)
    report.check(
        compare(model, vs, lower, 0) is not Ordering.LESS,
        inputs,
        f"v(x+y) >=0 {model.format(lower)}",
        model.format(vs),
    )
    if not _same_point(vx, vy):
        report.check(_same_point(vs, lower), inputs, "strict ultrametric", model.format(vs))
    vl = valuate(model, x.scale(lam))
    report.check(_same_point(vl, vx), inputs, f"v(lam*x) = {model.format(vx)}", model.format(vl))
    vv = valuate(model, vx)
    report.check(_same_point(vv, vx), inputs, "idempotence", model.format(vv))
    if not x.is_zero:
        positive = sign(model, vx, 1)
        report.check(positive is Ordering.GREATER, inputs, "v(x) >1 0", positive.name)
    a, b = abs_order(model, x, 1), abs_order(model, y, 1)
    if compare(model, b, a, 1) is Ordering.LESS:
        a, b = b, a
    if sign(model, a, 1) is Ordering.GREATER and compare(model, a, b, 1) is Ordering.LESS:
        va, vb = valuate(model, a), valuate(model, b)
        report.check(
            compare(model, va, vb, 0) is not Ordering.LESS,
            inputs,
            "convexity v(a) >=0 v(b)",
            f"{model.format(va)} vs {model.format(vb)}",
        )
    for element in (x, y, x + y):
        by_extension = valuate_by_extension(model, element)
        report.check(
            _same_point(by_extension, valuate(model, element)),
            render_inputs(model, element=element),
            "both valuation formulas agree",
            f"{model.format(valuate(model, element))} vs {model.format(by_extension)}",
        )


def _conservativity(cfg: SuiteConfig, rng: random.Random, report: Report, model: Model) -> None:
    prefix = model.truncate(rng.randrange(model.size + 1))
    for _ in range(cfg.samples):
        x, y = _sample(cfg, rng, prefix), _sample(cfg, rng, prefix)
        inputs = render_inputs(model, x=x, y=y, prefix=str(prefix.size))
        for order in range(model.orders):
            before, after = compare(prefix, x, y, order), compare(model, x, y, order)
            report.check(before is after, inputs, before.name, after.name)
        before, after = valuate(prefix, x), valuate(model, x)
        report.check(_same_point(before, after), inputs, str(before), str(after))


def _to_lead(model: Model, x: Vector) -> LeadVector:
    rank = model.value_rank
    return LeadVector.from_mapping({Fraction(rank[g]): c for g, c in x.terms})


def _oracle_cross_check(cfg: SuiteConfig, rng: random.Random, report: Report) -> None:
    """A tower of values only is the leading-term model indexed by <_0 rank."""
    size = rng.randint(1, max(1, cfg.max_generators))
    model = random_model(rng, size, schedule=["value"] * size, max_support=cfg.max_support)
    for _ in range(cfg.samples):
        x = _sample(cfg, rng, model)
        lead = _to_lead(model, x)
        inputs = render_inputs(model, x=x, lead=str(lead))
        value, lead_value = valuate(model, x), lead_valuate(lead)
        expected = "inf" if lead_value is INFINITY else str(lead_value)
        actual = "inf" if value is INFINITY else str(_to_lead(model, value))
        report.check(expected == actual, inputs, expected, actual)
        s, lead_s = sign(model, x, 1), lead_sign1(lead)
        report.check(s is lead_s, inputs, lead_s.name, s.name)


def _random_lead(rng: random.Random, cfg: SuiteConfig) -> LeadVector:
    indices = {Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(cfg.max_support)}
    return LeadVector.from_mapping(
        {q: random_scalar(rng, cfg.scalar_height) for q in indices if rng.random() < 0.8}
    )


def _oracle_axioms(cfg: SuiteConfig, rng: random.Random, report: Report) -> None:
    for _ in range(cfg.samples):
        x, y = _random_lead(rng, cfg), _random_lead(rng, cfg)
        lam = random_scalar(rng, cfg.scalar_height)
        inputs = f"oracle | x={x} | y={y} | lam={lam}"
        vx, vy, vs = lead_valuate(x), lead_valuate(y), lead_valuate(x + y)
        lower = vx if lead_value_compare(vx, vy) is not Ordering.GREATER else vy
        report.check(
            lead_value_compare(vs, lower) is not Ordering.LESS, inputs, "ultrametric", str(vs)
        )
        report.check(lead_valuate(x.scale(lam)) == vx, inputs, "v(lam*x) = v(x)", str(vx))
        report.check(lead_valuate(vx) == vx, inputs, "idempotence", str(vx))
        if not x.is_zero:
            report.check(lead_sign1(vx) is Ordering.GREATER, inputs, "v(x) >1 0", str(vx))
        a = x if lead_sign1(x) is not Ordering.LESS else x.scale(-1)
        b = y if lead_sign1(y) is not Ordering.LESS else y.scale(-1)
        if lead_compare1(b, a) is Ordering.LESS:
            a, b = b, a
        if lead_sign1(a) is Ordering.GREATER and lead_compare1(a, b) is Ordering.LESS:
            report.check(
                lead_value_compare(lead_valuate(a), lead_valuate(b)) is not Ordering.LESS,
                inputs,
                "convexity",
                f"{lead_valuate(a)} vs {lead_valuate(b)}",
            )
        if x.terms:
            report.check(lead_valuate(x) is not INFINITY, inputs, "nonzero value", "inf")


def _axiom_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    model = _sample_model(cfg, rng)
    for _ in range(cfg.samples):
        x, y, z = (_sample(cfg, rng, model) for _ in range(3))
        lam = random_scalar(rng, cfg.scalar_height)
        _order_laws(report, model, x, y, z, lam)
        _hamel_axioms(report, model, x, y, lam)
    zero_value = valuate(model, ZERO)
    report.check(zero_value is INFINITY, "v(0)", "inf", str(zero_value))
    report.check(valuate(model, INFINITY) is INFINITY, "v(inf)", "inf", "finite")
    _conservativity(cfg, rng, report, model)
    _oracle_cross_check(cfg, rng, report)
    _oracle_axioms(cfg, rng, report)
    return report


def run_axiom_suite(cfg: SuiteConfig) -> Report:
    return run_trials(cfg, _axiom_trial)


# --- value independence --------------------------------------------------------


def _value_independence_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    model = _sample_model(cfg, rng)
    values = list(model.values)
    for _ in range(cfg.samples):
        chosen = rng.sample(values, rng.randint(1, min(len(values), cfg.max_support)))
        combination = ZERO
        for h in chosen:
            combination = combination + h.scale(random_scalar(rng, cfg.scalar_height))
        least = min(chosen, key=lambda h: model.value_rank[h.top])
        inputs = render_inputs(model, combination=combination)
        report.check(not combination.is_zero, inputs, "nonzero combination", "0")
        value = valuate(model, combination)
        report.check(
            _same_point(value, least), inputs, model.format(least), model.format(value)
        )
        report.count(f"terms={len(chosen)}")
    return report


def run_value_independence(cfg: SuiteConfig) -> Report:
    return run_trials(cfg, _value_independence_trial)


# --- value growth ---------------------------------------------------------------

_MIN_COVERAGE = 10
_COVERAGE_TRIALS = 30


def _growth_instance(cfg: SuiteConfig, rng: random.Random, shape: int):
    """(model, G0 spanning list, extra vectors) for one growth trial.

    shape 0 samples everything at random, shape 1 forces growth = m with fresh
    values outside v(G0), shape 2 forces growth = 0 with ball generators whose
    value already lies in v(G0).
    """
    model = _sample_model(cfg, rng)
    base = [_sample(cfg, rng, model) for _ in range(rng.randint(1, 5))]
    if shape == 0:
        extras = [_sample(cfg, rng, model) for _ in range(rng.randint(0, 4))]
        return model, base, extras
    m = rng.randint(1, 4)
    extras: List[Vector] = []
    if shape == 1:
        for _ in range(m):
            model, h = adjoin_value(model, random_cut(rng, model, 0, cfg.max_support))
            extras.append(model.generator(h).scale(random_scalar(rng, cfg.scalar_height)))
        return model, base, extras
    alpha = rng.choice(model.values)
    base.append(alpha.scale(random_scalar(rng, cfg.scalar_height)))
    for _ in range(m):
        acut = AlphaCut(alpha, ZERO, rng.random() < 0.5)
        model, t = adjoin_ball(model, acut, random_cut(rng, model, 0, cfg.max_support))
        extras.append(model.generator(t))
    return model, base, extras


def _value_growth_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    model, base, extras = _growth_instance(cfg, rng, trial % 3)
    before = subspace_values(model, base)
    after = subspace_values(model, base + extras)
    growth, m = len(after - before), len(extras)
    inputs = render_inputs(
        model,
        base=", ".join(model.format(v) for v in base),
        extras=", ".join(model.format(v) for v in extras),
    )
    report.check(before <= after, inputs, "v(G0) inside v(G0 + C)", "value lost")
    report.check(growth <= m, inputs, f"growth <= {m}", str(growth))
    report.count(f"growth={growth}")
    if m > 0 and growth == 0:
        report.count("growth_zero")
    if m > 0 and growth == m:
        report.count("growth_full")
    return report


def run_value_growth(cfg: SuiteConfig) -> Report:
    report = run_trials(cfg, _value_growth_trial)
    if cfg.trials >= _COVERAGE_TRIALS:
        for key in ("growth_zero", "growth_full"):
            seen = report.stats.get(key, 0)
            report.check(
                seen >= _MIN_COVERAGE,
                f"coverage of {key} over {cfg.trials} trials",
                f">= {_MIN_COVERAGE}",
                str(seen),
            )
    return report
