"""Thermal-noise floor of crystalline whispering-gallery resonators.

Thin wrapper over the C++ core: temperature-dependent material tables,
fundamental-mode estimators, the axisymmetric elastostatic solver and the
fluctuation-dissipation noise pipeline.
"""

from wgrnoise._core import *  # noqa: F401,F403
from wgrnoise._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = __doc__ + "\n\n" + (_core_doc or "")
