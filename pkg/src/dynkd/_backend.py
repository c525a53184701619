"""Kernel backend selection.

The compiled kernel is picked automatically when its extension module is
importable; otherwise the pure-Python kernel takes over.  Set the
environment variable DYNKD_BACKEND to ``pure`` or ``compiled`` to override
the default.
"""

import os

from .engine_py import PyEngine

try:
    from ._ckd import CyEngine
except ImportError:
    CyEngine = None

PURE = "pure"
COMPILED = "compiled"
AUTO = "auto"

HAVE_COMPILED = CyEngine is not None


def default_backend():
    env = os.environ.get("DYNKD_BACKEND", AUTO).lower()
    if env in (PURE, COMPILED):
        return env
    return COMPILED if HAVE_COMPILED else PURE


def available_backends():
    return (PURE, COMPILED) if HAVE_COMPILED else (PURE,)


def engine_class(backend=AUTO):
    """Resolve a backend name to an engine class."""
    if backend == AUTO:
        backend = default_backend()
    if backend == PURE:
        return PyEngine
    if backend == COMPILED:
        if CyEngine is None:
            raise RuntimeError(
                "compiled backend requested but the dynkd._ckd extension is not built"
            )
        return CyEngine
    raise ValueError(f"unknown backend {backend!r}")
