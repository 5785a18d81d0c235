"""
Golden Tonnetz Engine

Exact geometry, base-figure atlas, lattice windows and rendering.
"""

from .config import EngineConfig
from .figure import FigureAtlas, FigureTemplate, Labeling, load_atlas, validate_atlas
from .tonnetz import LatticeVariant, TonnetzWindow, build_window

__all__ = [
    "EngineConfig",
    "FigureAtlas",
    "FigureTemplate",
    "Labeling",
    "LatticeVariant",
    "TonnetzWindow",
    "build_window",
    "load_atlas",
    "validate_atlas",
]
