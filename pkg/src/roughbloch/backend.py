"""Kernel backend selection: numba @njit versus pure NumPy.

Hot numerical kernels in this package come in two builds: a numba
nopython version and a NumPy fallback. Selection is controlled by the
environment variable ROUGHBLOCH_NUMBA:

    unset / ""  use numba when it imports, NumPy otherwise
    "1"         require numba (ImportError if unavailable)
    "0"         force the NumPy path (numba is not even imported)

ROUGHBLOCH_THREADS caps the numba thread pool (the solver itself runs
serial loops; this only matters for library-internal threading).

Both kernel builds stay importable side by side when numba is present,
so ``benchmarks/bench_backends.py`` can time them against each other in
one process.
"""

import os

_FLAG = os.environ.get("ROUGHBLOCH_NUMBA", "").strip()

if _FLAG == "0":
    numba = None
    HAVE_NUMBA = False
else:
    try:
        import numba
        HAVE_NUMBA = True
    except ImportError:
        numba = None
        HAVE_NUMBA = False
        if _FLAG == "1":
            raise ImportError(
                "ROUGHBLOCH_NUMBA=1 requires numba, which failed to import"
            )

USING_NUMBA = HAVE_NUMBA

_THREADS = os.environ.get("ROUGHBLOCH_THREADS", "").strip()
if HAVE_NUMBA and _THREADS:
    try:
        numba.set_num_threads(max(1, int(_THREADS)))
    except (ValueError, RuntimeError):
        pass


def jit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    Used for loop kernels whose NumPy fallback is the same loop body
    (correct but slow without compilation).
    """
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def compile_kernel(func):
    """Return the numba build of ``func`` or None when numba is absent.

    Unlike :func:`jit` this never falls back silently; callers keep the
    pure-Python/NumPy variant under a separate name and dispatch on
    :data:`USING_NUMBA`.
    """
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return None
