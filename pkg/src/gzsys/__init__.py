"""Gelfand-Tsetlin coordinates, flows and fibers on complex n x n matrices."""

from gzsys.coords import GZCoord, SpectrumTower, phi, tower
from gzsys.errors import DomainError, GZError, NumericalError
from gzsys.linalg import DEFAULT_TOL, MonicPoly, ToleranceConfig

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DomainError",
    "GZCoord",
    "GZError",
    "MonicPoly",
    "NumericalError",
    "SpectrumTower",
    "ToleranceConfig",
    "phi",
    "tower",
]
