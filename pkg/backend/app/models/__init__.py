"""
Domain types for pinsim.
"""

from .empirical import (
    FlowClass,
    FlowDiagnostic,
    HedgeRecord,
    HedgeSeries,
    PriceDirection,
    PricePath,
    PricePoint,
)
from .ensemble import EnsembleStats, NoiseConfig, SweepRow
from .manifest import RunManifest
from .params import DimensionlessParams, ModelParams, StatePoint
from .trajectory import (
    IntegrationMode,
    OdeConfig,
    SingularityCell,
    SingularityRow,
    SingularityScan,
    Termination,
    Trajectory,
    TrajectorySample,
)

__all__ = [
    "DimensionlessParams",
    "EnsembleStats",
    "FlowClass",
    "FlowDiagnostic",
    "HedgeRecord",
    "HedgeSeries",
    "IntegrationMode",
    "ModelParams",
    "NoiseConfig",
    "OdeConfig",
    "PriceDirection",
    "PricePath",
    "PricePoint",
    "RunManifest",
    "SingularityCell",
    "SingularityRow",
    "SingularityScan",
    "StatePoint",
    "SweepRow",
    "Termination",
    "Trajectory",
    "TrajectorySample",
]
