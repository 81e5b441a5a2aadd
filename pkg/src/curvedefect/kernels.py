"""Kernel selection.

The compiled extension is used when it imports; setting the environment
variable ``CURVEDEFECT_PURE=1`` forces the pure-Python kernels.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("CURVEDEFECT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels
else:
    _impl = _pykernels

canonical_code = _impl.canonical_code
interleave_matrix = _impl.interleave_matrix
casson_sum = _impl.casson_sum

__all__ = ["BACKEND", "canonical_code", "interleave_matrix", "casson_sum"]
