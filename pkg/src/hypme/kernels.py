"""Step-kernel backend selection.

The compiled extension is used when it was built; the numpy implementation
is the fallback and the reference.  Setting HYPME_PURE_PYTHON=1 in the
environment forces the fallback (useful for benchmarks and debugging).
The active choice is exported as backend_name and recorded in run metadata.
"""

import os

from . import _kernels_py

if os.environ.get("HYPME_PURE_PYTHON", "") == "1":
    _impl = _kernels_py
    backend_name = "numpy"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        backend_name = "cython"
    except ImportError:
        _impl = _kernels_py
        backend_name = "numpy"

MODEL_POWER = _kernels_py.MODEL_POWER
MODEL_GRADIENT = _kernels_py.MODEL_GRADIENT

residual = _impl.residual
newton_direction = _impl.newton_direction
