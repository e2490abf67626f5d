import logging
import random
import time
from pathlib import Path
from typing import Callable, Dict, List

from jinja2 import Environment, FileSystemLoader
from pydantic import BaseModel, Field

from ..core.errors import HamelError
from ..core.presentation import format_model
from ..core.tower import Model

logger = logging.getLogger(__name__)


base_path = Path(__file__).resolve().parent
_templates = Environment(
    loader=FileSystemLoader(str(base_path / "templates")),
    keep_trailing_newline=True,
)


class SuiteConfig(BaseModel):
    name: str
    trials: int = Field(100, gt=0)
    seed: int = Field(0, ge=0, lt=2**64)
    max_generators: int = Field(12, ge=0)
    max_support: int = Field(4, ge=1)
    scalar_height: int = Field(5, ge=1)
    samples: int = Field(20, ge=1)
    retry_cap: int = Field(100, ge=1)
    assignments: int = Field(100, ge=1)
    timing: bool = False

    def rng(self, trial: int) -> random.Random:
        """Independent generator per trial, so trials can run in any order."""
        return random.Random(f"{self.seed}:{self.name}:{trial}")


class Failure(BaseModel):
    inputs: str
    expected: str
    actual: str


class Report(BaseModel):
    suite: str
    trials: int = 0
    failures: List[Failure] = Field(default_factory=list)
    elapsed_ms: int = 0
    stats: Dict[str, int] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, inputs: str, expected: str, actual: str) -> None:
        self.failures.append(Failure(inputs=inputs, expected=expected, actual=actual))

    def check(self, condition: bool, inputs: str, expected: str, actual: str) -> bool:
        if not condition:
            self.fail(inputs, expected, actual)
        return condition

    def count(self, key: str, amount: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + amount

    def record_max(self, key: str, value: int) -> None:
        self.stats[key] = max(self.stats.get(key, value), value)

    def merge(self, other: "Report") -> "Report":
        stats = dict(self.stats)
        for key, value in other.stats.items():
            if key.startswith("max_"):
                stats[key] = max(stats.get(key, value), value)
            else:
                stats[key] = stats.get(key, 0) + value
        return Report(
            suite=self.suite if self.suite == other.suite else f"{self.suite}+{other.suite}",
            trials=self.trials + other.trials,
            failures=self.failures + other.failures,
            elapsed_ms=self.elapsed_ms + other.elapsed_ms,
            stats=stats,
        )

    def render_machine(self) -> str:
        lines = [
            f"suite={self.suite} trials={self.trials} failures={len(self.failures)} "
            f"elapsed_ms={self.elapsed_ms}"
        ]
        lines.extend(
            f"fail: {f.inputs} expected={f.expected} actual={f.actual}" for f in self.failures
        )
        return "\n".join(lines) + "\n"

    def render_text(self) -> str:
        return _templates.get_template("report.txt.j2").render(report=self)


def render_inputs(model: Model, **named) -> str:
    """One-line replayable rendering: the model file followed by named points."""
    parts = ["; ".join(format_model(model).splitlines())]
    for key, value in named.items():
        parts.append(f"{key}={model.format(value) if not isinstance(value, str) else value}")
    return " | ".join(parts)


def run_trials(cfg: SuiteConfig, trial: Callable[[SuiteConfig, int], Report]) -> Report:
    """Runs every trial in seed order and merges the per-trial reports."""
    logger.info("suite %s: %d trials, seed %d", cfg.name, cfg.trials, cfg.seed)
    started = time.perf_counter()
    report = Report(suite=cfg.name)
    for index in range(cfg.trials):
        try:
            part = trial(cfg, index)
        except HamelError as error:
            part = Report(suite=cfg.name)
            part.fail(f"trial {index}", "no engine error", f"{type(error).__name__}: {error}")
        part.trials = 1
        report = report.merge(part)
    report.elapsed_ms = int((time.perf_counter() - started) * 1000) if cfg.timing else 0
    logger.info(
        "suite %s finished: %d failures in %d ms",
        cfg.name,
        len(report.failures),
        report.elapsed_ms,
    )
    return report
