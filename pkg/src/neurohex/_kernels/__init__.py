"""Lattice kernel backend, chosen at import time.

The compiled ``_ckernels`` extension is used when it has been built; otherwise
the pure-Python ``_pykernels`` module is used.  Set ``NEUROHEX_PURE_PYTHON=1``
to force the fallback.  ``python`` is always importable as the reference
implementation (the instrumented cost measurements run on it).
"""

import os

from . import _pykernels as python

if os.environ.get("NEUROHEX_PURE_PYTHON", "") not in ("", "0"):
    active = python
else:
    try:
        from . import _ckernels as active
    except ImportError:
        active = python

BACKEND = active.BACKEND

__all__ = ["active", "python", "BACKEND"]
