"""Selection between the compiled trial kernel and its Python fallback.

The compiled extension is optional: source checkouts without a C toolchain
still work, just slower. The choice is made once at import from the
``ITSHSR_BACKEND`` environment variable (``auto``, ``native`` or
``python``) and can be overridden per call where a backend argument is
accepted.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernel_py
from .errors import ConfigError

BACKEND_ENV = "ITSHSR_BACKEND"

try:
    from . import _kernel as _kernel_native
except ImportError:
    _kernel_native = None

__all__ = [
    "BACKEND_ENV",
    "active_backend",
    "available_backends",
    "select_backend",
]


def available_backends() -> tuple[str, ...]:
    if _kernel_native is not None:
        return ("native", "python")
    return ("python",)


def select_backend(name: str | None = None) -> ModuleType:
    """Resolve a backend name to its kernel module.

    ``None`` defers to the environment variable, which itself defaults to
    ``auto`` (native when compiled, fallback otherwise). Asking for
    ``native`` in a build without the extension is an error rather than a
    silent downgrade.
    """
    if name is None:
        name = os.environ.get(BACKEND_ENV, "auto")
    if name == "auto":
        return _kernel_native if _kernel_native is not None else _kernel_py
    if name == "python":
        return _kernel_py
    if name == "native":
        if _kernel_native is None:
            raise ConfigError(
                "native backend requested but the compiled extension "
                "is not installed"
            )
        return _kernel_native
    raise ConfigError(
        f"unknown backend {name!r}; expected auto, native or python"
    )


_active = select_backend()


def active_backend() -> ModuleType:
    """The kernel module chosen at import time."""
    return _active
