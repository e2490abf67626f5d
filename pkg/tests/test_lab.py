import random
import time

import pytest

from hamel_spaces.cli.core.config import LabSettings
from hamel_spaces.core.errors import HamelError
from hamel_spaces.core.presentation import format_model
from hamel_spaces.core.tower import is_value
from hamel_spaces.lab.registry import SUITES, run_suite, suite_names
from hamel_spaces.lab.report import Report, SuiteConfig, run_trials
from hamel_spaces.lab.sampling import random_formula, random_model, random_sentence
from hamel_spaces.lab.sequences import CLAUSES, PATTERNS, constant_g, sample_trichotomy
from hamel_spaces.logic.syntax import free_variables


def small(name, trials=3, seed=11):
    return SuiteConfig(
        name=name, trials=trials, seed=seed, max_generators=6, samples=5, assignments=2
    )


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(name="axioms", trials=0)
    with pytest.raises(ValueError):
        SuiteConfig(name="axioms", seed=-1)


def test_trial_generators_depend_on_seed_and_trial():
    cfg = small("axioms")
    assert cfg.rng(2).random() == cfg.rng(2).random()
    assert cfg.rng(1).random() != cfg.rng(2).random()


def test_report_merge_adds_counts_and_keeps_maxima():
    a = Report(suite="qe", trials=1, stats={"formulas": 2, "max_prefix": 3})
    b = Report(suite="qe", trials=1, stats={"formulas": 5, "max_prefix": 1})
    b.fail("phi", "true", "false")
    merged = a.merge(b)
    assert merged.trials == 2
    assert merged.stats == {"formulas": 7, "max_prefix": 3}
    assert not merged.passed
    assert len(merged.failures) == 1


def test_report_check_records_failures_only_when_false():
    report = Report(suite="axioms")
    assert report.check(True, "x", "a", "a")
    assert not report.check(False, "x", "a", "b")
    assert len(report.failures) == 1


def test_machine_report_format():
    report = Report(suite="pairs", trials=4, elapsed_ms=0)
    report.fail("m | x=h1", "value", "not a value")
    assert report.render_machine() == (
        "suite=pairs trials=4 failures=1 elapsed_ms=0\n"
        "fail: m | x=h1 expected=value actual=not a value\n"
    )


def test_text_report_lists_statistics_and_failures():
    report = Report(suite="qe", trials=2, stats={"formulas": 6})
    report.fail("E x. x <0 x", "false", "true")
    text = report.render_text()
    assert text.startswith("Suite qe: FAILED")
    assert "formulas" in text
    assert "expected: false" in text


def test_engine_errors_inside_a_trial_become_failures():
    def broken(cfg, index):
        raise HamelError("boom")

    report = run_trials(small("axioms", trials=2), broken)
    assert report.trials == 2
    assert len(report.failures) == 2
    assert "HamelError: boom" in report.failures[0].actual


def test_random_models_are_reproducible():
    a = random_model(42, 6)
    b = random_model(42, 6)
    assert format_model(a) == format_model(b)
    assert a.size == 6


def test_random_plain_models_use_free_generators():
    model = random_model(3, 4, hamel=False, orders=3)
    assert model.orders == 3
    assert not model.is_hamel
    assert format_model(model).count("= free") == 4


def test_value_schedule_makes_every_generator_a_value():
    model = random_model(5, 4, schedule=["value"] * 4)
    assert all(is_value(model, model.generator(g)) for g in range(model.size))


def test_random_formulas_respect_requested_variables():
    rng = random.Random(9)
    for _ in range(20):
        assert free_variables(random_sentence(rng)) == set()
        assert free_variables(random_formula(rng)) <= {"x", "y", "z", "w"}


def test_trichotomy_instances_have_the_requested_length():
    instance = sample_trichotomy(small("trichotomy"), random.Random(4))
    assert len(instance.sequence) == 6
    names = {f"x{i + 1}" for i in range(instance.arity)}
    assert all(set(row) == names for row in instance.sequence)
    assert CLAUSES == ("infinite", "constant", "projection")


def test_random_trichotomy_instances_are_often_admissible():
    """Independently drawn terms and parameters pass the value precondition often enough."""
    cfg = small("trichotomy")
    rng = random.Random(21)
    accepted = 0
    for _ in range(200):
        instance = sample_trichotomy(cfg, rng, shape="random")
        assert instance.shape == "random"
        accepted += instance.admissible(instance.images())
    assert accepted >= 20


def test_trichotomy_report_counts_acceptances_per_shape():
    stats = run_suite(small("trichotomy", trials=8)).stats
    assert sum(v for k, v in stats.items() if k.startswith("accepted:")) == 8


def test_constant_g_pattern_filters_its_hypothesis():
    """Some drawn sequences keep g constant and some do not."""
    cfg = small("insertion")
    rng = random.Random(5)
    outcomes = {constant_g(cfg, rng).hypotheses[0][1] for _ in range(30)}
    assert outcomes == {True, False}


def test_registry_lists_every_suite():
    assert suite_names() == [
        "axioms",
        "value-independence",
        "value-growth",
        "insertion",
        "trichotomy",
        "pairs",
        "witnesses",
        "qe",
    ]
    assert len(PATTERNS) == 4


def test_unknown_suite_is_rejected():
    with pytest.raises(HamelError, match="unknown suite"):
        run_suite(small("nope"))


@pytest.mark.parametrize("name", list(SUITES))
def test_small_runs_pass(name):
    report = run_suite(small(name))
    assert report.trials == 3
    assert report.passed, report.render_machine()


@pytest.mark.parametrize("name", ["axioms", "pairs", "qe"])
def test_reports_are_reproducible(name):
    """Same seed, same trial count: byte-identical machine reports."""
    first = run_suite(small(name, seed=99)).render_machine()
    second = run_suite(small(name, seed=99)).render_machine()
    assert first == second


def test_default_lab_settings_reach_desk_scale():
    settings = LabSettings()
    assert settings.suite("witnesses").trials >= 500
    qe = settings.suite("qe")
    assert qe.trials >= 500
    assert qe.assignments == 100
    assert not qe.timing


def test_axiom_suite_at_desk_scale_is_quick():
    """Smoke check on comparison speed: a thousand samples across two models."""
    cfg = SuiteConfig(name="axioms", trials=2, seed=7, samples=500)
    started = time.perf_counter()
    report = run_suite(cfg)
    assert report.passed, report.render_machine()
    assert time.perf_counter() - started < 30
