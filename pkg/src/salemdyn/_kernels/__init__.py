"""Hot kernels with a compiled implementation and a pure-Python fallback.

The compiled module is used when it was built and ``SALEMDYN_PURE_PYTHON``
is not set to ``1``.  ``BACKEND`` names the implementation in use.
"""
import os

from . import _zerodiv_py

python_find_zero_divisor = _zerodiv_py.find_zero_divisor

compiled_find_zero_divisor = None
try:
    from ._zerodiv_c import find_zero_divisor as compiled_find_zero_divisor
except ImportError:  # extension not built
    compiled_find_zero_divisor = None

if compiled_find_zero_divisor is not None and os.environ.get("SALEMDYN_PURE_PYTHON") != "1":
    find_zero_divisor = compiled_find_zero_divisor
    BACKEND = "cython"
else:
    find_zero_divisor = python_find_zero_divisor
    BACKEND = "python"

__all__ = ["BACKEND", "compiled_find_zero_divisor", "find_zero_divisor", "python_find_zero_divisor"]
