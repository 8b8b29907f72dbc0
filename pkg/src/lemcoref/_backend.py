"""Kernel backend selection: compiled extension if importable, else pure Python.

LEMCOREF_PURE=1 forces the pure-Python kernels regardless of what is built.
"""

import os

if os.environ.get("LEMCOREF_PURE", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND: str = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]
