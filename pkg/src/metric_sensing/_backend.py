"""Kernel backend selection.

Hot loops live in two interchangeable forms: loop kernels compiled with
numba (``_kernels_nb``) and batched numpy/scipy kernels (``_kernels_np``).
The ``METRIC_SENSING_BACKEND`` environment variable (``numba`` or ``numpy``)
picks the default at import time; ``use_backend`` switches temporarily.
"""

import contextlib
import os

ENV_VAR = "METRIC_SENSING_BACKEND"
BACKENDS = ("numba", "numpy")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _initial_backend():
    requested = os.environ.get(ENV_VAR, "").strip().lower()
    if requested and requested not in BACKENDS:
        raise ValueError(f"{ENV_VAR} must be one of {BACKENDS}, got {requested!r}")
    if requested == "numba" and not HAVE_NUMBA:
        raise ImportError(f"{ENV_VAR}=numba but numba is not importable")
    if requested:
        return requested
    return "numba" if HAVE_NUMBA else "numpy"


_current = _initial_backend()


def get_backend():
    return _current


def set_backend(name):
    global _current
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    if name == "numba" and not HAVE_NUMBA:
        raise ImportError("numba backend requested but numba is not importable")
    _current = name


@contextlib.contextmanager
def use_backend(name):
    previous = _current
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kernels():
    """Return the kernel module for the active backend."""
    if _current == "numba":
        from . import _kernels_nb

        return _kernels_nb
    from . import _kernels_np

    return _kernels_np
