from pathlib import Path

import pytest

from app.core.services.model_core import dimensionless_for_beta, map_state
from app.models.params import ModelParams
from app.models.trajectory import OdeConfig

FIXTURES = Path(__file__).parent / "fixtures"

# Market instance of the January 18, 2013 AAPL close
STRIKE = 500.0
OPEN_PRICE = 498.34
SIGMA = 1.102e-3
HORIZON = 360.0
END_MIN = 357.0


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def params() -> ModelParams:
    return ModelParams(strike=STRIKE, sigma=SIGMA, mu=0.0, horizon=HORIZON, position=1.0)


@pytest.fixture
def dp(params):
    """Scaled parameters at beta = 1."""
    return dimensionless_for_beta(params, 1.0)


@pytest.fixture
def z_open(params) -> float:
    return map_state(OPEN_PRICE, 0.0, params).z


@pytest.fixture
def day_config(z_open) -> OdeConfig:
    return OdeConfig(s_end=END_MIN / HORIZON, z_start=z_open, steps=357)
