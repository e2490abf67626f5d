import logging
import sys
import yaml
from pathlib import Path
from typing import Dict, Optional
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from ...lab.report import SuiteConfig
from ...logic.qe import Domain


class EngineSettings(BaseModel):
    cross_check: bool = False
    domain: Domain = Domain.FINITE


class LabSettings(BaseModel):
    seed: int = 0
    trials: Dict[str, int] = Field(
        default_factory=lambda: {
            "axioms": 1000,
            "value-independence": 1000,
            "value-growth": 1000,
            "insertion": 400,
            "trichotomy": 500,
            "pairs": 200,
            "witnesses": 500,
            "qe": 500,
        }
    )
    default_trials: int = 100
    max_generators: int = 12
    max_support: int = 4
    scalar_height: int = 5
    samples: int = 20
    retry_cap: int = 100
    assignments: int = 100
    timing: bool = False

    def suite(self, name: str, trials: Optional[int] = None, seed: Optional[int] = None) -> SuiteConfig:
        return SuiteConfig(
            name=name,
            trials=trials or self.trials.get(name, self.default_trials),
            seed=self.seed if seed is None else seed,
            max_generators=self.max_generators,
            max_support=self.max_support,
            scalar_height=self.scalar_height,
            samples=self.samples,
            retry_cap=self.retry_cap,
            assignments=self.assignments,
            timing=self.timing,
        )


class LoggingSettings(BaseModel):
    log_path: Optional[str] = None
    level: str = "WARNING"


class HamelSettings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="HAMEL_", env_nested_delimiter="__")

    engine: EngineSettings = Field(default_factory=EngineSettings)
    lab: LabSettings = Field(default_factory=LabSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @classmethod
    def load(cls, path: str = "config.yaml") -> "HamelSettings":
        config_path = Path(path)
        if not config_path.exists():
            return cls()

        with open(config_path, "r") as f:
            data = yaml.safe_load(f) or {}

        return cls(**data)


_settings: Optional[HamelSettings] = None


def get_settings(path: Optional[str] = None) -> HamelSettings:
    global _settings
    if _settings is None or path is not None:
        _settings = HamelSettings.load(path) if path else HamelSettings.load()
    return _settings


def configure_logging(settings: LoggingSettings, verbose: bool = False) -> None:
    """Stderr handler plus an optional file handler; stdout stays free for results."""
    level = logging.DEBUG if verbose else getattr(logging, settings.level.upper(), logging.WARNING)
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.log_path:
        Path(settings.log_path).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(settings.log_path))
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        handlers=handlers,
        force=True,
    )
