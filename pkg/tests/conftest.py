"""Shared fixtures and generators for the test suite."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from treeot.suites import random_measure_pair, random_profile, random_tree

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def demo_instance_path() -> Path:
    return FIXTURES / "demo_tree_instance.json"


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


__all__ = ["FIXTURES", "random_tree", "random_measure_pair", "random_profile", "rng_for"]
