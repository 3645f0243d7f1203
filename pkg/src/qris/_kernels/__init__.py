"""Hot-path kernels with a compiled fast path and a NumPy fallback.

The compiled extension (``_core``) is preferred; the pure implementation
is selected when the extension is missing or when the ``QRIS_PURE``
environment variable is set to a non-empty value.  ``IMPLEMENTATION``
reports which one is active ("compiled" or "python").
"""

from __future__ import annotations

import os

from . import fallback

if os.environ.get("QRIS_PURE"):
    _impl = fallback
    IMPLEMENTATION = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
        IMPLEMENTATION = "compiled"
    except ImportError:
        _impl = fallback
        IMPLEMENTATION = "python"

rs_remainder = _impl.rs_remainder
penalty_score = _impl.penalty_score
block_means = _impl.block_means
best_split_gh = _impl.best_split_gh
best_split_impurity = _impl.best_split_impurity

__all__ = [
    "IMPLEMENTATION",
    "fallback",
    "rs_remainder",
    "penalty_score",
    "block_means",
    "best_split_gh",
    "best_split_impurity",
]
