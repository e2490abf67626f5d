"""Seeded samplers for models, elements and formulas."""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from ..core.linear import INFINITY, ZERO, GenId, Point, Vector
from ..core.tower import (
    AlphaCut,
    Cut,
    Model,
    adjoin_ball,
    adjoin_free,
    adjoin_value,
)
from ..logic.syntax import (
    Add,
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Inf,
    Le,
    Lt,
    Not,
    Or,
    Scale,
    Term,
    Var,
    Zero,
    free_variables,
)

logger = logging.getLogger(__name__)

Seed = Union[int, random.Random]


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_scalar(rng: random.Random, height: int = 5, nonzero: bool = True) -> Fraction:
    while True:
        c = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if c != 0 or not nonzero:
            return c


def random_element(
    rng: random.Random,
    model: Model,
    max_support: int = 4,
    height: int = 5,
    gens: Optional[Sequence[GenId]] = None,
) -> Vector:
    """Random combination of at most `max_support` generators; may be zero."""
    pool = list(range(model.size)) if gens is None else list(gens)
    if not pool:
        return ZERO.with_owner(model.token)
    support = rng.sample(pool, rng.randint(1, min(max_support, len(pool))))
    return model.element({model.names[g]: random_scalar(rng, height) for g in support})


def random_nonzero(rng: random.Random, model: Model, max_support: int = 4, height: int = 5):
    if model.size == 0:
        raise ValueError("the trivial model has no nonzero element")
    return random_element(rng, model, max_support, height)


def random_point(
    rng: random.Random, model: Model, max_support: int = 4, height: int = 5
) -> Point:
    if rng.random() < 0.05:
        return INFINITY
    if rng.random() < 0.05:
        return ZERO.with_owner(model.token)
    return random_element(rng, model, max_support, height)


def random_cut(rng: random.Random, model: Model, order: int, max_support: int = 4) -> Cut:
    roll = rng.random()
    if roll < 0.1:
        return Cut.everything(order)
    if roll < 0.2:
        return Cut.nothing(order)
    anchor = random_element(rng, model, max_support)
    if rng.random() < 0.5:
        return Cut.weak_below(anchor, order)
    return Cut.strict_below(anchor, order)


def ball_generators(model: Model, alpha: Vector) -> List[GenId]:
    """Generators whose value is at least alpha in <_0; they span the closed ball."""
    rank = model.value_rank
    floor = rank[alpha.top]
    return [g for g, value in enumerate(model.value_gen_of) if rank[value] >= floor]


def adjoin_random(
    rng: random.Random, model: Model, kind: str, max_support: int = 4
) -> Model:
    if kind == "free":
        cuts = [random_cut(rng, model, order, max_support) for order in range(model.orders)]
        return adjoin_free(model, cuts)[0]
    if kind == "value" or not model.value_rank:
        return adjoin_value(model, random_cut(rng, model, 0, max_support))[0]
    alpha = rng.choice(model.values)
    pivot = ZERO
    if rng.random() < 0.5:
        pivot = random_element(rng, model, max_support, gens=ball_generators(model, alpha))
    acut = AlphaCut(alpha, pivot, rng.random() < 0.5)
    return adjoin_ball(model, acut, random_cut(rng, model, 0, max_support))[0]


def random_model(
    seed: Seed,
    size: int,
    hamel: bool = True,
    orders: int = 2,
    schedule: Optional[Sequence[str]] = None,
    max_support: int = 4,
) -> Model:
    """Random tower of `size` generators.

    Hamel towers interleave value and ball adjunctions; plain towers use free
    adjunctions. `schedule` forces the kind of each step, e.g. value,value,ball.
    """
    rng = _rng(seed)
    model = Model.hamel() if hamel else Model.plain(orders)
    for step in range(size):
        if schedule is not None and step < len(schedule):
            kind = schedule[step]
        elif not hamel:
            kind = "free"
        else:
            kind = rng.choice(("value", "ball"))
        model = adjoin_random(rng, model, kind, max_support)
    logger.debug("random model: %d generators, %s", model.size, model.mode)
    return model


# --- Formulas --------------------------------------------------------------


def random_linear_term(rng: random.Random, variables: Sequence[str], height: int = 2) -> Term:
    if rng.random() < 0.04:
        return Inf()
    if rng.random() < 0.1:
        return Zero()
    names = rng.sample(list(variables), rng.randint(1, min(2, len(variables))))
    result: Optional[Term] = None
    for name in names:
        c = rng.choice([k for k in range(-height, height + 1) if k != 0])
        summand: Term = Var(name) if c == 1 else Scale(Fraction(c), Var(name))
        result = summand if result is None else Add(result, summand)
    return result


def random_atom(
    rng: random.Random, variables: Sequence[str], orders: int = 2
) -> Formula:
    left = random_linear_term(rng, variables)
    right = random_linear_term(rng, variables)
    roll = rng.random()
    if roll < 0.25:
        return Eq(left, right)
    order = rng.randrange(orders)
    return Lt(order, left, right) if roll < 0.75 else Le(order, left, right)


def random_formula(
    rng: random.Random,
    variables: Sequence[str] = ("x", "y", "z", "w"),
    max_quantifiers: int = 3,
    depth: int = 3,
    orders: int = 2,
) -> Formula:
    """Random order-reduct formula with at most `max_quantifiers` quantifiers."""
    budget = [max_quantifiers]

    def build(level: int) -> Formula:
        if level == 0 or rng.random() < 0.2:
            return random_atom(rng, variables, orders)
        roll = rng.random()
        if budget[0] > 0 and roll < 0.35:
            budget[0] -= 1
            var = rng.choice(list(variables))
            quantifier = Exists if rng.random() < 0.5 else Forall
            return quantifier(var, build(level - 1))
        if roll < 0.45:
            return Not(build(level - 1))
        connective = rng.choice((And, And, Or, Or, Implies))
        return connective(build(level - 1), build(level - 1))

    return build(depth)


def random_sentence(rng: random.Random, orders: int = 2, max_quantifiers: int = 3) -> Formula:
    """Random sentence: a formula over one or two variables, closed by quantifiers."""
    variables = ("x", "y")[: rng.randint(1, 2)]
    f = random_formula(
        rng, variables, max_quantifiers=max_quantifiers - len(variables), orders=orders
    )
    for var in sorted(free_variables(f)):
        f = (Exists if rng.random() < 0.5 else Forall)(var, f)
    return f
