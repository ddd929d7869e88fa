"""Numba availability probe and the env switch for the pure-numpy fallback.

Set ``CAREKIT_DISABLE_NUMBA=1`` before importing carekit to force the numpy
code paths for every accelerated kernel. The selection happens once, at
import time.
"""

import os

ENV_FLAG = "CAREKIT_DISABLE_NUMBA"


def disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    from numba import njit  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on stripped installs
    njit = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not disabled_by_env()


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
