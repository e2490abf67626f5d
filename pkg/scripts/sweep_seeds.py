import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hamel_spaces.cli.core.config import get_settings
from hamel_spaces.lab.registry import run_suite, suite_names

SEEDS = range(10)
TRIALS = 50


def sweep():
    """Runs every suite over several seeds and tabulates the failures."""
    settings = get_settings().lab

    print(f"{'Suite':<20} | {'Seed':<6} | {'Failures':<8} | {'Stats'}")
    print("-" * 80)
    failing = 0
    for name in suite_names():
        for seed in SEEDS:
            report = run_suite(settings.suite(name, TRIALS, seed))
            stats = " ".join(f"{k}={v}" for k, v in sorted(report.stats.items()))
            print(f"{name:<20} | {seed:<6} | {len(report.failures):<8} | {stats}")
            for failure in report.failures[:3]:
                print(f"  {failure.inputs}\n    expected={failure.expected} actual={failure.actual}")
            failing += not report.passed

    print(f"\n{failing} failing runs")


if __name__ == "__main__":
    sweep()
