"""Backend selection for the word-enumeration kernel.

The compiled ``_ckernels`` module is used when it was built; otherwise the
pure-Python ``_pykernels`` takes over.  Setting ``QSTIRLING_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _pykernels
from ._pykernels import ALL, QUASI_STIRLING, STIRLING

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

python = _pykernels

if compiled is not None and not os.environ.get("QSTIRLING_PURE_PYTHON"):
    BACKEND = "cython"
    descent_distribution = compiled.descent_distribution
else:
    BACKEND = "python"
    descent_distribution = _pykernels.descent_distribution

__all__ = ["ALL", "QUASI_STIRLING", "STIRLING", "BACKEND", "descent_distribution",
           "compiled", "python"]
