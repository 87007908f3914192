"""Hot-kernel dispatch: the compiled extension when built, else the numpy fallback.

Set ``BARRIERSWEEP_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    if os.environ.get("BARRIERSWEEP_PURE"):
        raise ImportError("fallback forced by BARRIERSWEEP_PURE")
    from . import _ckernels
except ImportError:
    _ckernels = None

_impl: ModuleType = _ckernels if _ckernels is not None else _pykernels
BACKEND = "cython" if _ckernels is not None else "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def backend(name: str) -> ModuleType:
    """Kernel module by name (``"python"`` or ``"cython"``)."""
    if name == "python":
        return _pykernels
    if name == "cython" and _ckernels is not None:
        return _ckernels
    raise ValueError(f"kernel backend {name!r} not available")


def segment_distances(a, b):
    return _impl.segment_distances(a, b)


def visit_gaps(*args, **kwargs):
    return _impl.visit_gaps(*args, **kwargs)


def meeting_gaps(*args, **kwargs):
    return _impl.meeting_gaps(*args, **kwargs)


def matching_dp(w):
    return _impl.matching_dp(w)
