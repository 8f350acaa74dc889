"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded. Setting ``NRANGE_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("NRANGE_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _pykernels as _impl
        BACKEND = "python"

jacobi_eigvalsh = _impl.jacobi_eigvalsh
knapsack_support = _impl.knapsack_support
halfplane_violation = _impl.halfplane_violation
polygon_distance = _impl.polygon_distance
rotated_eigvalsh = _impl.rotated_eigvalsh

__all__ = ["BACKEND", "jacobi_eigvalsh", "knapsack_support", "halfplane_violation", "polygon_distance", "rotated_eigvalsh"]
