"""Kernel selection: the compiled core when importable, else pure Python.

Set ``POLARLINES_PURE=1`` to force the pure-Python kernel.
"""

import os

from . import _pykernel
from ._pykernel import bits

PyKernel = _pykernel.Kernel

try:
    if os.environ.get("POLARLINES_PURE"):
        raise ImportError("pure kernel requested")
    from ._ckernel import Kernel as CKernel
except ImportError:
    CKernel = None

Kernel = CKernel if CKernel is not None else PyKernel
COMPILED = CKernel is not None

__all__ = ["Kernel", "PyKernel", "CKernel", "COMPILED", "bits"]
