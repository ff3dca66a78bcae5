"""Kernel backend selection.

The compiled extension (_speedups) is preferred; the NumPy fallback
(_numpy) implements identical semantics. Set QFFT_KERNELS=python to force
the fallback or QFFT_KERNELS=c to require the extension.
"""

import os

_choice = os.environ.get("QFFT_KERNELS", "auto").lower()
if _choice not in ("auto", "c", "python"):
    raise ImportError(f"QFFT_KERNELS must be auto, c or python, not {_choice!r}")

if _choice == "python":
    from . import _numpy as _impl
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl
        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise
        from . import _numpy as _impl
        BACKEND = "python"

dft_direct = _impl.dft_direct
run_stages = _impl.run_stages
quantize_uniform_block = _impl.quantize_uniform_block
quantize_float_block = _impl.quantize_float_block

__all__ = [
    "BACKEND",
    "dft_direct",
    "run_stages",
    "quantize_uniform_block",
    "quantize_float_block",
]
