"""Kernel backend selection: compiled `_core` when built, pure Python otherwise.

The compiled kernels handle one machine word per row (dimension <= 64); calls
outside that range always go to the pure implementation.  Set
``CHAR2UNI_BACKEND=py`` to force the fallback or ``=c`` to require the
extension; ``use()`` switches at runtime (the benchmark relies on this).
"""

import os

from . import _kernels_py

_FORCE = os.environ.get("CHAR2UNI_BACKEND", "").strip().lower()

_core = None
if _FORCE in ("", "c"):
    try:
        from . import _core  # type: ignore[attr-defined]
    except ImportError:
        if _FORCE == "c":
            raise
        _core = None

_active = _core if _core is not None else _kernels_py
BACKEND = "c" if _core is not None else "py"


def available():
    return ("c", "py") if _core is not None else ("py",)


def use(name):
    """Select the kernel implementation ('c' or 'py'); returns the previous name."""
    global _active, BACKEND
    prev = BACKEND
    if name == "py":
        _active = _kernels_py
    elif name == "c":
        if _core is None:
            raise ValueError("compiled kernels are not available")
        _active = _core
    else:
        raise ValueError("unknown backend %r" % (name,))
    BACKEND = name
    return prev


def rank(rows, ncols):
    if _active is not _kernels_py and ncols <= 64 and len(rows) <= 64:
        return _active.rank(rows, ncols)
    return _kernels_py.rank(rows, ncols)


def mat_mul(a_rows, b_rows, n):
    if _active is not _kernels_py and n <= 64:
        return _active.mat_mul(a_rows, b_rows, n)
    return _kernels_py.mat_mul(a_rows, b_rows, n)


def classify_unipotent(g_rows, gram_rows, n):
    if _active is not _kernels_py and n <= 64:
        return _active.classify_unipotent(g_rows, gram_rows, n)
    return _kernels_py.classify_unipotent(g_rows, gram_rows, n)
