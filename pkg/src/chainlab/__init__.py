"""Finite-ring laboratory for chain rings, coherent sentences and covering families."""

from .errors import ChainLabError
from .finring import RingTable, build

__version__ = "0.1.0"
__all__ = ["ChainLabError", "RingTable", "build", "__version__"]
