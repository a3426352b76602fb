"""Numba switch.

Set ``LOTBOUND_NO_NUMBA=1`` before import to run every kernel as plain
Python over numpy arrays. Same source, same results, much slower.
"""
from __future__ import annotations

import os

DISABLED = os.environ.get("LOTBOUND_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError("numba disabled by LOTBOUND_NO_NUMBA")
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn
        return wrap


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


# kernel sentinel for +inf; finite scaled costs stay below 2**55 so a
# handful of sentinel sums still fit in int64
INF = 1 << 60
