"""Figure rendering for greedy energy sequence data."""

from .render import DataError, fetch_constants, prepare_data, render
from .specs import FIGURES, FigureSpec, PanelSpec

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "FIGURES",
    "FigureSpec",
    "PanelSpec",
    "fetch_constants",
    "prepare_data",
    "render",
]
