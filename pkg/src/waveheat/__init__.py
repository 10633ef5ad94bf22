"""Numerical verification tools for a singularly perturbed wave-heat system."""
from .core import (
    DEFAULT_PARAMS,
    CoupledState,
    EnergyRecord,
    HeatField,
    NumericalError,
    ParameterError,
    Parameters,
    SpatialGrid,
    WaveField,
    WaveHeatError,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PARAMS", "CoupledState", "EnergyRecord", "HeatField", "NumericalError",
    "ParameterError", "Parameters", "SpatialGrid", "WaveField", "WaveHeatError",
]
