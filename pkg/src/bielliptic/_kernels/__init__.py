"""Integer kernels behind the series arithmetic.

The compiled GMP backend is used when it was built; otherwise, or when
``BIELLIPTIC_PURE_PYTHON`` is set to a non-empty value, the pure-Python
reference implementation is selected.  Both expose the same functions.
"""

import os

from . import _pykernel as python_backend

compiled_backend = None
if not os.environ.get("BIELLIPTIC_PURE_PYTHON"):
    try:
        from . import _ckernel as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND = _active.BACKEND
mul_trunc = _active.mul_trunc
inv_unit = _active.inv_unit
exp_logderiv = _active.exp_logderiv
weierstrass_x = _active.weierstrass_x

__all__ = [
    "BACKEND",
    "compiled_backend",
    "exp_logderiv",
    "inv_unit",
    "mul_trunc",
    "python_backend",
    "weierstrass_x",
]
