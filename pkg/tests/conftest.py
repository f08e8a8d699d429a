"""
Shared fixtures: scenario builders and the bundled reference scenarios
"""
from pathlib import Path

import pytest

from sectorsec.models.schemas import ChannelStats, ScenarioConfig

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def make_config(**overrides) -> ScenarioConfig:
    """Passive reference scenario (R = 3, M = 4, mu = 1, sigma = 0.95) with keyword overrides (channel fields accepted flat)"""
    channel = {"mu_s": 1.0, "sigma_s": 0.95, "mu_k": 1.0, "sigma_k": 0.95}
    for key in list(overrides):
        if key in channel:
            channel[key] = overrides.pop(key)
    data = {
        "channel": ChannelStats(**channel),
        "n_sectors": 4,
        "m_right": 4,
        "rate_threshold": 3.0,
        "snr_db": 15.0,
    }
    data.update(overrides)
    return ScenarioConfig(**data)


@pytest.fixture
def passive_path() -> Path:
    return CONFIG_DIR / "passive_sectors.toml"


@pytest.fixture
def colluding_path() -> Path:
    return CONFIG_DIR / "colluding_relays.toml"


@pytest.fixture
def write_config(tmp_path):
    """Write a scenario file from key = value lines and return its path"""
    def _write(text: str, name: str = "scenario.toml") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write
