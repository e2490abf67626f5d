"""Finite stand-ins for indiscernible sequences: insertion and trichotomy suites.

A configuration lists the points at two runs of five indices and at one
inserted index c between them. Its hypotheses are the finitely many
quantifier-free facts the insertion step relies on; they are checked by the
engine before the conclusion at c is asserted.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from ..core.linear import INFINITY, UNBOUNDED, ZERO, Ordering, Point, Vector
from ..core.tower import (
    AlphaCut,
    Cut,
    Model,
    adjoin_ball,
    adjoin_value,
    compare,
    is_value,
    less,
    valuate,
)
from ..core.witness import density_witness, independence_witness
from ..logic.evaluate import evaluate_qf, evaluate_term
from ..logic.parser import parse_formula, parse_term
from ..logic.syntax import Add, Inf, Scale, Term, Var, Zero, print_term
from .report import Report, SuiteConfig, render_inputs, run_trials
from .sampling import random_cut, random_element, random_model, random_scalar

logger = logging.getLogger(__name__)

SIDE = 5
Row = Dict[str, Point]


@dataclass
class Configuration:
    model: Model
    g: str
    h: str
    rows: List[Row]
    inserted: Row
    hypotheses: List[Tuple[str, bool]] = field(default_factory=list)

    def render(self) -> str:
        def row(values: Row) -> str:
            return "{" + ", ".join(f"{k}: {self.model.format(v)}" for k, v in values.items()) + "}"

        return render_inputs(
            self.model,
            claim=f"v({self.g}) = {self.h}",
            rows=" ".join(row(r) for r in self.rows),
            c=row(self.inserted),
        )


def _base(cfg: SuiteConfig, rng: random.Random) -> Model:
    size = rng.randint(1, max(1, cfg.max_generators // 2))
    return random_model(rng, size, max_support=cfg.max_support)


def _element(cfg: SuiteConfig, rng: random.Random, model: Model) -> Vector:
    return random_element(rng, model, cfg.max_support, cfg.scalar_height)


def _open_ball_noise(
    cfg: SuiteConfig, rng: random.Random, model: Model, value: Vector
) -> Vector:
    """Small element whose value is strictly above `value` in <_0, or zero."""
    rank = model.value_rank
    floor = rank[value.top]
    pool = [g for g, v in enumerate(model.value_gen_of) if rank[v] > floor]
    if not pool or rng.random() < 0.5:
        return ZERO
    return random_element(rng, model, cfg.max_support, cfg.scalar_height, gens=pool)


def _increasing(model: Model, points: List[Vector], order: int) -> bool:
    return all(less(model, a, b, order) for a, b in zip(points, points[1:]))


# --- the four insertion patterns ----------------------------------------------------


def nonconstant_constant(cfg: SuiteConfig, rng: random.Random) -> Configuration:
    """a_i = b + x_i with 0 <1 x_1 <1 ... and every v(x_i) the same value beta."""
    model = _base(cfg, rng)
    beta = rng.choice(model.values)
    b = _element(cfg, rng, model)
    ladder: List[Vector] = []
    pivot = ZERO
    for _ in range(2 * SIDE):
        acut = AlphaCut(beta, pivot, True)
        model, t = adjoin_ball(model, acut, random_cut(rng, model, 0, cfg.max_support))
        pivot = model.generator(t)
        ladder.append(pivot)
    xs = [x + _open_ball_noise(cfg, rng, model, beta) for x in ladder]
    model, xc = independence_witness(model, UNBOUNDED, (xs[SIDE - 1], xs[SIDE]))
    ordered = [ZERO] + xs[:SIDE] + [xc] + xs[SIDE:]
    return Configuration(
        model,
        g="x1 - y1",
        h="z1",
        rows=[{"x1": b + x, "y1": b, "z1": beta} for x in xs],
        inserted={"x1": b + xc, "y1": b, "z1": beta},
        hypotheses=[("0 <1 a_i - b increasing through c", _increasing(model, ordered, 1))],
    )


def nonconstant_nonconstant(cfg: SuiteConfig, rng: random.Random) -> Configuration:
    """Values a'_i strictly increasing in <0 and v(a_i - b) = a'_i."""
    model = _base(cfg, rng)
    b = _element(cfg, rng, model)
    chain: List[Vector] = []
    previous = rng.choice(model.values)
    for _ in range(2 * SIDE + 1):
        model, h = adjoin_value(model, Cut.weak_below(previous))
        previous = model.generator(h)
        chain.append(previous)
    model, hc = density_witness(model, chain[SIDE - 1], chain[SIDE])
    value_c = model.generator(hc)

    def tail(value: Vector, above: Vector) -> Vector:
        mu = random_scalar(rng, cfg.scalar_height)
        nu = random_scalar(rng, cfg.scalar_height, nonzero=False)
        return b + value.scale(mu) + above.scale(nu)

    rows = [{"x1": chain[i], "x2": tail(chain[i], chain[i + 1]), "y1": b} for i in range(2 * SIDE)]
    inserted = {"x1": value_c, "x2": tail(value_c, chain[SIDE]), "y1": b}
    values = chain[:SIDE] + [value_c] + chain[SIDE : 2 * SIDE]
    distinct = len({r["x2"] for r in rows}) == len(rows)
    return Configuration(
        model,
        g="x2 - y1",
        h="x1",
        rows=rows,
        inserted=inserted,
        hypotheses=[
            ("a'_i increasing in <0 through c", _increasing(model, values, 0)),
            ("a_i nonconstant", distinct),
        ],
    )


def constant_g(cfg: SuiteConfig, rng: random.Random) -> Configuration:
    """g(x1, x2, y1) = x1 - x2 + y1 over pairs drawn with a shift from a small pool.

    Rows whose shift differs break constancy and the configuration is rejected.
    The inserted pair copies the difference of its left neighbour as the engine
    reads it, not the shift it was drawn with.
    """
    model = _base(cfg, rng)
    shifts = [_element(cfg, rng, model), _element(cfg, rng, model)]
    b1 = _element(cfg, rng, model)
    b2 = valuate(model, b1 - shifts[0])
    rows = []
    for _ in range(2 * SIDE):
        p = _element(cfg, rng, model)
        shift = shifts[0] if rng.random() < 0.9 else rng.choice(shifts)
        rows.append({"x1": p, "x2": p + shift, "y1": b1, "z1": b2})
    model, pc = independence_witness(model)
    neighbour = rows[SIDE - 1]
    inserted = {"x1": pc, "x2": pc + (neighbour["x2"] - neighbour["x1"]), "y1": b1, "z1": b2}
    return Configuration(
        model,
        g="x1 - x2 + y1",
        h="z1",
        rows=rows,
        inserted=inserted,
        hypotheses=[("g(a_i, b1) constant", _constant_g(model, "x1 - x2 + y1", rows))],
    )


def _constant_g(model: Model, g: str, rows: List[Row]) -> bool:
    term = parse_term(g)
    images = [evaluate_term(model, term, row) for row in rows]
    return all(image == images[0] for image in images)


def constant_infinite(cfg: SuiteConfig, rng: random.Random) -> Configuration:
    """Constant sequence a_i = b: both sides of the claim are infinite."""
    model = _base(cfg, rng)
    b = _element(cfg, rng, model)
    rows = [{"x1": b, "y1": b} for _ in range(2 * SIDE)]
    return Configuration(model, g="x1 - y1", h="inf", rows=rows, inserted={"x1": b, "y1": b})


_CRITERION_CASES: Dict[str, Callable[[SuiteConfig, random.Random], Configuration]] = {
    "g-constant": constant_g,
    "h-infinite": constant_infinite,
    "h-constant": nonconstant_constant,
    "h-projection": nonconstant_nonconstant,
}

PATTERNS = ("nonconstant-constant", "nonconstant-nonconstant", "constant-g", "criterion")


def _build(cfg: SuiteConfig, rng: random.Random, pattern: str, report: Report) -> Configuration:
    if pattern == "nonconstant-constant":
        return nonconstant_constant(cfg, rng)
    if pattern == "nonconstant-nonconstant":
        return nonconstant_nonconstant(cfg, rng)
    if pattern == "constant-g":
        return constant_g(cfg, rng)
    case = rng.choice(sorted(_CRITERION_CASES))
    report.count(f"criterion:{case}")
    return _CRITERION_CASES[case](cfg, rng)


def _insertion_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    pattern = PATTERNS[trial % len(PATTERNS)]
    for attempt in range(cfg.retry_cap):
        config = _build(cfg, rng, pattern, report)
        claim = parse_formula(f"v({config.g}) = {config.h}", orders=2)
        broken = [name for name, holds in config.hypotheses if not holds]
        if not broken and not all(evaluate_qf(config.model, claim, r) for r in config.rows):
            broken.append("claim at every listed index")
        if broken:
            report.count("retries")
            logger.debug("%s attempt %d rejected: %s", pattern, attempt, ", ".join(broken))
            continue
        report.count(pattern)
        holds = evaluate_qf(config.model, claim, config.inserted)
        report.check(holds, config.render(), "claim holds at c", "fails at c")
        return report
    report.fail(pattern, "a configuration meeting the hypotheses", f"none in {cfg.retry_cap}")
    return report


def run_insertion_suite(cfg: SuiteConfig) -> Report:
    return run_trials(cfg, _insertion_trial)


# --- trichotomy ---------------------------------------------------------------------

CLAUSES = ("infinite", "constant", "projection")
SHAPES = ("projection", "constant", "infinite", "random")
LENGTH = 6


@dataclass
class TrichotomyInstance:
    model: Model
    term: Term
    params: Row
    sequence: List[Row]
    arity: int
    shape: str = "random"

    def images(self) -> List[Point]:
        return [
            evaluate_term(self.model, self.term, {**self.params, **row}) for row in self.sequence
        ]

    def admissible(self, images: List[Point]) -> bool:
        """Every image of the sequence is a value or infinite."""
        return all(image is INFINITY or is_value(self.model, image) for image in images)


def _linear(coefficients: List[Tuple[Fraction, str]]) -> Term:
    result: Optional[Term] = None
    for c, name in coefficients:
        if c == 0:
            continue
        summand: Term = Var(name) if c == 1 else Scale(c, Var(name))
        result = summand if result is None else Add(result, summand)
    return result or Zero()


def _fresh_values(cfg: SuiteConfig, rng: random.Random, model: Model, count: int):
    values = []
    for _ in range(count):
        model, h = adjoin_value(model, random_cut(rng, model, 0, cfg.max_support))
        values.append(model.generator(h))
    return model, values


def _random_coefficient(rng: random.Random) -> Fraction:
    return Fraction(rng.choices((0, 1, -1, 2), weights=(5, 3, 1, 1))[0])


def _random_parameter(
    cfg: SuiteConfig, rng: random.Random, model: Model, d: Fraction, entries: List[Vector]
) -> Vector:
    """Zero, a value cancelling d, a scaled sequence entry or an arbitrary element."""
    roll = rng.random()
    if roll < 0.35:
        return ZERO
    if roll < 0.7:
        return rng.choice(model.values).scale(1 / d)
    if roll < 0.85:
        return rng.choice(entries).scale(random_scalar(rng, cfg.scalar_height))
    return _element(cfg, rng, model)


def sample_trichotomy(
    cfg: SuiteConfig, rng: random.Random, shape: Optional[str] = None
) -> TrichotomyInstance:
    """Term h(x, y), parameters b and a sequence of tuples of distinct values.

    The constructed shapes aim at one clause each; the random shape draws every
    coefficient and parameter independently and is kept only when admissible.
    """
    model = _base(cfg, rng)
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    model, entries = _fresh_values(cfg, rng, model, m * LENGTH)
    sequence = [
        {f"x{l + 1}": entries[i * m + l] for l in range(m)} for i in range(LENGTH)
    ]
    shape = shape or rng.choice(SHAPES)
    d = [random_scalar(rng, cfg.scalar_height) for _ in range(n)]
    b = [_element(cfg, rng, model) for _ in range(n)]
    c = [Fraction(0)] * m
    infinite = shape == "infinite"
    if shape == "projection":
        c[rng.randrange(m)] = Fraction(1)
        b[-1] = ZERO if n == 1 else b[0].scale(-d[0] / d[-1])
    elif shape == "constant":
        beta = rng.choice(model.values)
        rest = ZERO if n == 1 else b[0].scale(d[0])
        b[-1] = (beta - rest).scale(1 / d[-1])
    elif shape == "random":
        c = [_random_coefficient(rng) for _ in range(m)]
        b = [_random_parameter(cfg, rng, model, d[j], entries) for j in range(n)]
        infinite = rng.random() < 0.1
    term = _linear([(c[l], f"x{l + 1}") for l in range(m)] + [(d[j], f"y{j + 1}") for j in range(n)])
    if infinite:
        term = Add(term, Inf())
    params = {f"y{j + 1}": b[j] for j in range(n)}
    return TrichotomyInstance(model, term, params, sequence, m, shape)


def fitting_clauses(instance: TrichotomyInstance, images: List[Point]) -> List[str]:
    model = instance.model
    fits = []
    if all(image is INFINITY for image in images):
        fits.append("infinite")
    if images[0] is not INFINITY and all(image == images[0] for image in images):
        fits.append("constant")
    for l in range(instance.arity):
        name = f"x{l + 1}"
        if all(
            image is not INFINITY
            and compare(model, image, row[name], 0) is Ordering.EQUAL
            for image, row in zip(images, instance.sequence)
        ):
            fits.append(f"projection:{name}")
    return fits


def _trichotomy_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    for _ in range(cfg.retry_cap):
        instance = sample_trichotomy(cfg, rng)
        model = instance.model
        images = instance.images()
        if not instance.admissible(images):
            report.count(f"discarded:{instance.shape}")
            continue
        report.count(f"accepted:{instance.shape}")
        fits = fitting_clauses(instance, images)
        inputs = render_inputs(
            model,
            h=print_term(instance.term),
            b=", ".join(f"{k}={model.format(v)}" for k, v in instance.params.items()),
            sequence=" ".join(
                "(" + ", ".join(model.format(v) for v in row.values()) + ")"
                for row in instance.sequence
            ),
        )
        report.check(len(fits) == 1, inputs, "exactly one clause", ", ".join(fits) or "none")
        if fits:
            report.count(f"clause={fits[0].split(':')[0]}")
        return report
    report.count("skipped")
    return report


def run_trichotomy(cfg: SuiteConfig) -> Report:
    return run_trials(cfg, _trichotomy_trial)
