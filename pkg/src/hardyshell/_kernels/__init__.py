"""Hot-loop kernels with a compiled core and a numpy fallback.

The compiled extension ``_ckernels`` is used when it was built and imports
cleanly; otherwise the numpy implementation in ``_pykernels`` is used.  Set
``HARDYSHELL_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("HARDYSHELL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "cython" if compiled_backend is not None else "numpy"

chi_matrix = backend.chi_matrix
chi_apply_k = backend.chi_apply_k
chi_apply_r = backend.chi_apply_r
laplace_sum = backend.laplace_sum
laplace_sum_uniform = backend.laplace_sum_uniform

__all__ = [
    "BACKEND_NAME",
    "backend",
    "chi_apply_k",
    "chi_apply_r",
    "chi_matrix",
    "compiled_backend",
    "laplace_sum",
    "laplace_sum_uniform",
    "python_backend",
]
