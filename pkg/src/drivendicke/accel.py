"""Numba / pure-numpy path selection.

The heavy loops (monodromy rasters, multistart descent) exist twice: a
compiled scalar kernel and a vectorized numpy twin.  Which one runs is
decided here, once, from the environment:

* ``DRIVENDICKE_NO_NUMBA=1`` forces the numpy path,
* a failed numba import falls back to numpy silently,
* otherwise the compiled path is used.

``benchmarks/bench_kernels.py`` times both paths against each other; the
test suite asserts they agree.
"""

from __future__ import annotations

import os

# Pin the threading layer before numba loads: workqueue is always present,
# and letting numba probe TBB emits a version warning on stderr that would
# pollute the CLI's machine-readable error stream.
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    import numba
    from numba import njit, prange

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only on stripped installs
    numba = None
    NUMBA_AVAILABLE = False
    prange = range

    def njit(*args, **kwargs):
        """Identity decorator stand-in when numba is missing."""

        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


_ENV_FLAG = "DRIVENDICKE_NO_NUMBA"
_ENV_THREADS = "DRIVENDICKE_THREADS"

_forced_numpy: bool | None = None


def _env_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() not in ("", "0", "false", "no")


def numba_enabled() -> bool:
    """True when the compiled kernels should be dispatched to."""
    if _forced_numpy is not None:
        return NUMBA_AVAILABLE and not _forced_numpy
    return NUMBA_AVAILABLE and not _env_disabled()


def force_numpy(flag: bool | None) -> None:
    """Override the environment switch (None restores env behaviour).

    Exists for tests and the benchmark harness, which need to exercise both
    paths in one process.
    """
    global _forced_numpy
    _forced_numpy = flag


def set_threads(n: int | None) -> int:
    """Set the numba thread count from an explicit value or the environment.

    Returns the count actually in effect (1 on the numpy path).
    """
    if n is None:
        raw = os.environ.get(_ENV_THREADS, "").strip()
        n = int(raw) if raw else 0
    if NUMBA_AVAILABLE and n and n > 0:
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
        return numba.get_num_threads()
    if NUMBA_AVAILABLE:
        return numba.get_num_threads()
    return 1
