"""Backend selection for the hot numeric kernels.

Two interchangeable kernel paths exist: numba-compiled loops (default when
numba imports) and vectorized numpy. Set SEPGEOM_NO_NUMBA=1 to force the
numpy path. SEPGEOM_THREADS caps numba's thread pool when present.
"""

import os

_DISABLE = os.environ.get("SEPGEOM_NO_NUMBA", "").lower() in ("1", "true", "yes")

HAS_NUMBA = False
if not _DISABLE:
    try:
        from numba import njit as _numba_njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False

if HAS_NUMBA:
    threads = os.environ.get("SEPGEOM_THREADS")
    if threads:
        try:
            import numba

            numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))
        except (ImportError, ValueError):
            pass

    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        return _numba_njit(*args, **kwargs)

else:

    def njit(*args, **kwargs):
        # identity decorator, kernels run as plain python (tests only; the
        # production fallback path is the vectorized numpy twin)
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap
