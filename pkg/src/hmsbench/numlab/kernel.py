"""Backend selection for the root tracker.

The compiled extension is used when it imports; setting HMSBENCH_PURE=1
forces the pure-Python fallback.
"""
import os

from . import _track_py

BACKEND = "python"
_impl = _track_py

if not os.environ.get("HMSBENCH_PURE"):
    try:
        from . import _track as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

track_path = _impl.track_path
polish = _impl.polish
