"""
Intraday price paths, hedge series and the buy/sell flow diagnostic.
"""

from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class PricePoint(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    time: float = Field(description="Minutes since session start")
    price: float = Field(gt=0)


class PricePath(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: list[PricePoint]
    source: Literal["ingested", "simulated"] = "ingested"

    @field_validator("points")
    def check_points(cls, v):
        if len(v) < 2:
            raise ValueError("a price path needs at least 2 points")
        for previous, current in zip(v, v[1:]):
            if not current.time > previous.time:
                raise ValueError("price path times must be strictly increasing")
        return v

    @property
    def times(self) -> list[float]:
        return [p.time for p in self.points]

    @property
    def prices(self) -> list[float]:
        return [p.price for p in self.points]


class HedgeRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    time: float
    price: float
    d1: float
    cdf_d1: float
    straddle_delta: float
    hedge_position: float = Field(description="Shares held against the options, -n * delta")
    hedge_flow: float | None = Field(
        default=None, description="Backward difference of hedge_position in shares per minute"
    )


class HedgeSeries(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: list[HedgeRecord]
    position: float

    def __len__(self) -> int:
        return len(self.records)


class FlowClass(str, Enum):
    BUY = "BUY"
    SELL = "SELL"
    FLAT = "FLAT"


class PriceDirection(str, Enum):
    UP = "UP"
    DOWN = "DOWN"
    FLAT = "FLAT"


class FlowDiagnostic(BaseModel):
    """Whether hedging flow over a window worked against the price move."""

    model_config = ConfigDict(frozen=True)

    window: tuple[float, float]
    net_flow: float
    price_change: float
    classification: FlowClass
    price_direction: PriceDirection
    opposes_move: bool

    @model_validator(mode="after")
    def check_opposes(self):
        expected = (
            self.classification == FlowClass.SELL and self.price_direction == PriceDirection.UP
        ) or (
            self.classification == FlowClass.BUY and self.price_direction == PriceDirection.DOWN
        )
        if self.opposes_move != expected:
            raise ValueError("opposes_move inconsistent with classification and price direction")
        return self
