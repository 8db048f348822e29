"""Figure rendering for dtpcap sweep CSVs."""

from .render import FigureSpec, RenderResult, load_sweep, main, render

__all__ = ["FigureSpec", "RenderResult", "load_sweep", "main", "render"]
