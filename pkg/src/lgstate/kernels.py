"""Hot-kernel dispatch: the compiled extension when importable, else pure Python.

Set ``LGSTATE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("LGSTATE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

poly_add = _impl.poly_add
poly_mul = _impl.poly_mul
reduce_int = _impl.reduce_int
