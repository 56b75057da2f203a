"""Backend selection for the integer row-reduction kernels.

The hot loops (Hermite and Smith reductions) exist twice: as numba-compiled
int64 kernels with overflow guards, and as exact arbitrary-precision twins
operating on numpy object arrays.  The fast path is used when the input fits
int64 and numba is available; any overflow during reduction falls back to
the exact path, so results are always exact.

Set POSETCOH_BACKEND=python to force the pure path (e.g. for benchmarking
or when numba is unavailable).
"""

import os

ENV_VAR = "POSETCOH_BACKEND"

_kernels = None
_checked = False


def numba_requested() -> bool:
    return os.environ.get(ENV_VAR, "numba").strip().lower() != "python"


def kernels():
    """Return the compiled kernel module, or None when disabled/unavailable."""
    global _kernels, _checked
    if not numba_requested():
        return None
    if not _checked:
        _checked = True
        try:
            from . import _reduction_numba

            _kernels = _reduction_numba
        except ImportError:
            _kernels = None
    return _kernels


def backend_in_use() -> str:
    return "numba" if kernels() is not None else "python"
