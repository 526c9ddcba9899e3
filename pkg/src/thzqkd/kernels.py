"""Backend selection for the hot loops.

The compiled extension is used when it imported cleanly; otherwise, or
when ``THZQKD_PURE_PYTHON=1`` is set, the numpy fallback is used.
``BACKEND`` names the active choice ("cython" or "python").
"""

import os

from . import _pykernels

if os.environ.get("THZQKD_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

imd_count_table = _impl.imd_count_table
line_absorption_sum = _impl.line_absorption_sum
