"""Select the elimination backend at import time.

The compiled ``_kernels`` extension is preferred; the pure-Python twin is used
when the extension is not built or when ``EXACTCAT_PURE=1`` is set. Both give
identical results, so callers never need to know which one is active.
"""

import os

from exactcat import _kernels_py

smith_field = _kernels_py.smith_field

if os.environ.get("EXACTCAT_PURE", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from exactcat import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

if _compiled is not None:
    smith_int = _compiled.smith_int
    smith_mod_p = _compiled.smith_mod_p
    BACKEND = "compiled"
else:
    smith_int = _kernels_py.smith_int
    smith_mod_p = _kernels_py.smith_mod_p
    BACKEND = "python"
