# Numba if available and not disabled via GAUSS_GGM_DISABLE_NUMBA=1.
# Otherwise the pure-numpy kernels are used.

import logging
import os

logger = logging.getLogger(__name__)

_DISABLED = os.environ.get("GAUSS_GGM_DISABLE_NUMBA", "").strip().lower() in {
    "1", "true", "yes", "on"
}

try:
    if _DISABLED:
        raise ImportError("disabled by GAUSS_GGM_DISABLE_NUMBA")
    import numba

    njit = numba.njit
    HAVE_NUMBA = True
except ImportError as exc:
    logger.debug("numba unavailable (%s); using numpy kernels", exc)
    HAVE_NUMBA = False

    def njit(pyfunc=None, **kwargs):
        def wrap(func):
            return func

        return wrap if pyfunc is None else wrap(pyfunc)


def backend():
    """Name of the kernel backend selected at import time."""
    return "numba" if HAVE_NUMBA else "numpy"
