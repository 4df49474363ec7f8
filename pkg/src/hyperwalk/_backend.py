"""Selects between the compiled and pure-NumPy kernel backends.

The compiled extension is preferred when built. Set HYPERWALK_BACKEND to
``python`` or ``compiled`` to override, or call :func:`set_backend` at
runtime (the benchmark suite does this to compare the two).
"""

from __future__ import annotations

import os
import warnings

from . import _fallback

try:
    from . import _core
except ImportError:
    _core = None

_BACKENDS = {"python": _fallback}
if _core is not None:
    _BACKENDS["compiled"] = _core


def available_backends() -> tuple[str, ...]:
    """Names accepted by :func:`set_backend`."""
    return tuple(sorted(_BACKENDS))


def _initial_name() -> str:
    name = os.environ.get("HYPERWALK_BACKEND", "").strip()
    if not name:
        return "compiled" if _core is not None else "python"
    if name not in ("python", "compiled"):
        raise ValueError(f"HYPERWALK_BACKEND must be 'python' or 'compiled', got {name!r}")
    if name == "compiled" and _core is None:
        warnings.warn("compiled backend requested but the extension is not built; "
                      "falling back to the python backend")
        return "python"
    return name


_active = _initial_name()


def set_backend(name: str) -> None:
    """Switch the kernel backend for subsequent calls."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _active = name


def backend_name() -> str:
    return _active


def get_ops():
    """Module providing csr_matvec / walk_hits / walk_paths."""
    return _BACKENDS[_active]
