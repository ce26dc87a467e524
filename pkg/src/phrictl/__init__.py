"""Transparency / stability-robustness design toolkit for admittance
controllers coupled to human and environment impedance models."""

from . import cli, freqresp, maps, metrics, pareto, selection

__all__ = ["cli", "freqresp", "maps", "metrics", "pareto", "selection"]
__version__ = "0.1.0"
