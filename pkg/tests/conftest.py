"""Shared helpers for driving scenarios in tests."""

from pathlib import Path

from dispensim.scenario import RunConfig, parse_scenario, run_scenario

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = DATA_DIR / "golden"


def run_text(text: str, **config):
    """Parse and run a scenario given as literal script text."""
    return run_scenario(parse_scenario(text), RunConfig(**config))
