"""Certified equations for bielliptic modular curves X0(N) from eta quotients."""

from ._kernels import BACKEND
from .qseries import QSeries

__all__ = ["BACKEND", "QSeries"]
__version__ = "0.1.0"
