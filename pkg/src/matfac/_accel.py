"""Numba availability probe and kernel-path selection.

Hot kernels (Jacobi rotations, AR recursions) ship in two variants: a
numba ``@njit`` build and a pure-numpy fallback.  The active path is
chosen once at import time; set ``MATFAC_DISABLE_NUMBA=1`` to force the
numpy fallback even when numba is installed.
"""

import os

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAS_NUMBA = False


def _env_disabled() -> bool:
    return os.environ.get("MATFAC_DISABLE_NUMBA", "").strip().lower() in {
        "1",
        "true",
        "yes",
    }


USE_NUMBA = HAS_NUMBA and not _env_disabled()
