"""Kernel selection: compiled extension when importable, numpy fallback otherwise.

Set ``TORICMAX_BACKEND=python`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _f2py

python_kernels = _f2py

compiled_kernels = None
if os.environ.get("TORICMAX_BACKEND", "").lower() != "python":
    try:
        from . import _f2core as compiled_kernels
    except ImportError:  # extension not built
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"
