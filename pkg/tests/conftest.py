from __future__ import annotations

from pathlib import Path

import pytest

from reflexsim import load_scenario

REPO = Path(__file__).resolve().parent.parent

# Expected de-escalation replay columns, one value per tick.
GOLDEN_TORSO = [-3.8, -1.8, -2.3, -1.3, -1.3, 0.1, 0.0]
GOLDEN_SD_TARGET = [0.2, 0.2, 0.2, 0.2, 0.2, 1.7, 1.7]
GOLDEN_C_SD = [1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5]
GOLDEN_DISTANCES = [4.0, 2.0, 2.5, 1.5, 1.5, 1.5, 1.7]


@pytest.fixture(scope="session")
def scenarios_dir() -> Path:
    return REPO / "scenarios"


@pytest.fixture(scope="session")
def golden_csv(scenarios_dir: Path) -> Path:
    return scenarios_dir / "golden" / "deescalation.csv"


@pytest.fixture()
def deescalation(scenarios_dir: Path):
    return load_scenario(scenarios_dir / "deescalation.scn")


@pytest.fixture()
def calm_approach(scenarios_dir: Path):
    return load_scenario(scenarios_dir / "calm_approach.scn")
