"""Backend selection for the integer linear algebra kernels.

The compiled extension (`_core`, built from Cython) and the pure-Python
module (`_purepy`) export the same four functions.  The environment
variable MCGTWIST_BACKEND forces a choice: "c" requires the extension,
"py" skips it.  By default the extension is used when available.
"""

import os


def _load():
    choice = os.environ.get("MCGTWIST_BACKEND", "").strip().lower()
    if choice not in ("", "c", "py"):
        raise ValueError("MCGTWIST_BACKEND must be 'c' or 'py', got %r" % choice)
    if choice in ("", "c"):
        try:
            from . import _core
            return _core
        except ImportError:
            if choice == "c":
                raise
    from . import _purepy
    return _purepy


backend = _load()

xgcd = backend.xgcd
vec_axpy = backend.vec_axpy
echelon_insert = backend.echelon_insert
echelon_reduce = backend.echelon_reduce
snf_factors = backend.snf_factors
BACKEND_NAME = backend.BACKEND
