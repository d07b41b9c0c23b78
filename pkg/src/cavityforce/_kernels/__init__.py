"""Hot kernels with a compiled implementation and a numpy fallback.

The Cython build is used when it imports; set ``CAVITYFORCE_PURE_PYTHON=1``
to force the fallback. ``BACKEND`` names the active implementation.
"""
import os

from . import _pycavity
from ._pycavity import ATOM, SLAB

try:
    from . import _ccavity
except ImportError:  # extension not built
    _ccavity = None

COMPILED_AVAILABLE = _ccavity is not None

if COMPILED_AVAILABLE and not os.environ.get("CAVITYFORCE_PURE_PYTHON"):
    cavity_moments = _ccavity.cavity_moments
    BACKEND = "cython"
else:
    cavity_moments = _pycavity.cavity_moments
    BACKEND = "python"


def implementations():
    """Mapping of backend name to ``cavity_moments`` for every available build."""
    out = {"python": _pycavity.cavity_moments}
    if COMPILED_AVAILABLE:
        out["cython"] = _ccavity.cavity_moments
    return out


__all__ = ["ATOM", "SLAB", "BACKEND", "COMPILED_AVAILABLE", "cavity_moments", "implementations"]
