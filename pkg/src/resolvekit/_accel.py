"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over.  Setting RESOLVEKIT_PURE=1 forces the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("RESOLVEKIT_PURE", "") not in ("", "0"):
    from . import _fallback as kernels
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _fallback as kernels

INF = kernels.INF
MD, GS, SMD = kernels.MD, kernels.GS, kernels.SMD
