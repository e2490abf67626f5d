import logging
from typing import Callable, Dict, List

from ..core.errors import HamelError
from .algebra import run_axiom_suite, run_value_growth, run_value_independence
from .elimination import run_qe_suite
from .pairs import run_pair_suite
from .report import Report, SuiteConfig
from .sequences import run_insertion_suite, run_trichotomy
from .witnesses import run_witness_suite

logger = logging.getLogger(__name__)

SuiteRunner = Callable[[SuiteConfig], Report]

SUITES: Dict[str, SuiteRunner] = {
    "axioms": run_axiom_suite,
    "value-independence": run_value_independence,
    "value-growth": run_value_growth,
    "insertion": run_insertion_suite,
    "trichotomy": run_trichotomy,
    "pairs": run_pair_suite,
    "witnesses": run_witness_suite,
    "qe": run_qe_suite,
}


def suite_names() -> List[str]:
    return list(SUITES)


def run_suite(cfg: SuiteConfig) -> Report:
    try:
        runner = SUITES[cfg.name]
    except KeyError:
        raise HamelError(
            f"unknown suite '{cfg.name}', expected one of: {', '.join(SUITES)}"
        ) from None
    return runner(cfg)
