"""Dynamic forests: fully dynamic connectivity and path-aggregate trees."""

from .connectivity import (
    Deletion,
    DynamicConnectivity,
    LeveledConnectivity,
    NaiveConnectivity,
    make_connectivity,
)
from .euler_tour import EulerTourForest
from .path_forest import PathForest

__all__ = [
    "Deletion",
    "DynamicConnectivity",
    "EulerTourForest",
    "LeveledConnectivity",
    "NaiveConnectivity",
    "PathForest",
    "make_connectivity",
]
