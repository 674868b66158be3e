"""Kernel backend selection.

The compiled extension is preferred when it imports; the pure-Python module
is the fallback and the reference.  Set ``PSN_PURE_PYTHON=1`` to force the
fallback (used by the benchmark and the cross-checking tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("PSN_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND_NAME

is_reduced = _impl.is_reduced
reduce_word = _impl.reduce_word
normal_form = _impl.normal_form
absorbed_at = _impl.absorbed_at
