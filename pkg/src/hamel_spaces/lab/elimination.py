"""Quantifier elimination checked against direct witness search on plain towers."""

from __future__ import annotations

import random
from typing import Dict, List

from ..core.linear import Point
from ..core.tower import Model
from ..logic.evaluate import evaluate, evaluate_qf
from ..logic.parser import parse_formula
from ..logic.qe import decide_sentence, qe
from ..logic.syntax import (
    Formula,
    free_variables,
    is_quantifier_free,
    print_formula,
    quantifier_depth,
)
from .report import Report, SuiteConfig, render_inputs, run_trials
from .sampling import random_element, random_formula, random_model, random_sentence

MODELS_PER_FORMULA = 3
MODELS_PER_SENTENCE = 5


def _plain_models(cfg: SuiteConfig, rng: random.Random, count: int) -> List[Model]:
    return [
        random_model(
            rng,
            rng.randint(1, max(1, cfg.max_generators // 2)),
            hamel=False,
            orders=2,
            max_support=cfg.max_support,
        )
        for _ in range(count)
    ]


def _assignment(cfg: SuiteConfig, rng: random.Random, model: Model, f: Formula) -> Dict[str, Point]:
    return {
        name: random_element(rng, model, cfg.max_support, cfg.scalar_height)
        for name in sorted(free_variables(f))
    }


def _render(model: Model, f: Formula, assignment: Dict[str, Point], **extra) -> str:
    named = {name: model.format(value) for name, value in assignment.items()}
    return render_inputs(model, formula=print_formula(f), **named, **extra)


def _formula_trial(cfg: SuiteConfig, rng: random.Random, report: Report) -> None:
    phi = random_formula(rng)
    psi = qe(phi)
    shown = print_formula(phi)
    report.count("formulas")
    report.record_max("max_prefix", quantifier_depth(phi))

    report.check(is_quantifier_free(psi), shown, "quantifier-free", print_formula(psi))
    report.check(
        free_variables(psi) <= free_variables(phi),
        shown,
        f"free variables within {sorted(free_variables(phi))}",
        str(sorted(free_variables(psi))),
    )
    reparsed = parse_formula(shown, orders=2)
    report.check(reparsed == phi, shown, "printer output parses back", print_formula(reparsed))
    again = qe(psi)

    for model in _plain_models(cfg, rng, MODELS_PER_FORMULA):
        for _ in range(cfg.assignments):
            assignment = _assignment(cfg, rng, model, phi)
            truth, extended = evaluate(model, phi, assignment)
            eliminated = evaluate_qf(extended, psi, assignment)
            inputs = _render(extended, phi, assignment, eliminated=print_formula(psi))
            report.check(truth == eliminated, inputs, str(truth), str(eliminated))
            report.check(
                evaluate_qf(extended, again, assignment) == eliminated,
                inputs,
                "eliminating twice changes nothing",
                print_formula(again),
            )
            report.count("assignments")


def _sentence_trial(cfg: SuiteConfig, rng: random.Random, report: Report) -> None:
    sentence = random_sentence(rng)
    decided = decide_sentence(sentence)
    report.count("sentences")
    for model in _plain_models(cfg, rng, MODELS_PER_SENTENCE):
        truth, extended = evaluate(model, sentence)
        report.check(
            truth == decided,
            _render(extended, sentence, {}),
            f"decided {decided}",
            f"searched {truth}",
        )


def _qe_trial(cfg: SuiteConfig, trial: int) -> Report:
    rng = cfg.rng(trial)
    report = Report(suite=cfg.name)
    _formula_trial(cfg, rng, report)
    _sentence_trial(cfg, rng, report)
    return report


def run_qe_suite(cfg: SuiteConfig) -> Report:
    return run_trials(cfg, _qe_trial)
