"""Optional numba acceleration.

Set ``HEXLOOP_NO_JIT=1`` to run every kernel as plain Python (same code,
same results, much slower).  Numba is also skipped when it is not installed.
"""
from __future__ import annotations

import os

JIT_DISABLED = os.environ.get("HEXLOOP_NO_JIT", "").strip().lower() not in ("", "0", "false", "no")

try:  # pragma: no cover - depends on the environment
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

JIT_ENABLED = _numba is not None and not JIT_DISABLED


def njit(func):
    """``numba.njit(cache=True)`` when enabled, identity otherwise."""
    if JIT_ENABLED:
        return _numba.njit(cache=True)(func)
    return func


def backend_name() -> str:
    return "numba" if JIT_ENABLED else "python"
