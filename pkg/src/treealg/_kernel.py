"""Select the elimination kernel: compiled if built, pure Python otherwise.

Set TREEALG_PURE=1 to force the Python kernel (used by the benchmark).
"""

import os

if os.environ.get("TREEALG_PURE"):
    from treealg import _gauss_py as _impl

    BACKEND = "python"
else:
    try:
        from treealg import _gauss_c as _impl

        BACKEND = "c"
    except ImportError:
        from treealg import _gauss_py as _impl

        BACKEND = "python"

normalize_row = _impl.normalize_row
reduce_row = _impl.reduce_row
rref = _impl.rref
