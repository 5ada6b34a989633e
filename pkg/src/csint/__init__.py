"""Coherent-state integrals: pFq series, Meijer-G weights and identity verification."""
from .errors import CsintError
from .structures import ParameterSet, SeriesValue

__version__ = "0.1.0"
__all__ = ["CsintError", "ParameterSet", "SeriesValue", "__version__"]
