from __future__ import annotations

from pathlib import Path

import pytest

from forage.context_model import (
    parse_application,
    parse_mobile,
    parse_network,
    parse_surrogate,
)

REPO = Path(__file__).resolve().parent.parent
SCENARIOS = REPO / "scenarios"
DESCRIPTORS = SCENARIOS / "descriptors"


@pytest.fixture(scope="session")
def scenarios_dir() -> Path:
    return SCENARIOS


@pytest.fixture(scope="session")
def descriptors_dir() -> Path:
    return DESCRIPTORS


@pytest.fixture(scope="session")
def bundled_mobile():
    return parse_mobile((DESCRIPTORS / "mobile_handset.xml").read_text())


@pytest.fixture(scope="session")
def bundled_surrogate():
    return parse_surrogate((DESCRIPTORS / "surrogate_desktop.xml").read_text())


@pytest.fixture(scope="session")
def bundled_network():
    return parse_network((DESCRIPTORS / "network_wlan.xml").read_text())


@pytest.fixture(scope="session")
def bundled_prime_app():
    return parse_application((DESCRIPTORS / "app_nth_prime.xml").read_text())


@pytest.fixture(scope="session")
def bundled_det_app():
    return parse_application((DESCRIPTORS / "app_matrix_determinant.xml").read_text())
