"""Kernel backend selection.

The compiled extension is preferred; the pure-Python twin is used when it is
missing or when ``RELFORGE_PURE_PYTHON=1`` is set before import.
"""

import os

from relforge import _pykernels

if os.environ.get("RELFORGE_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from relforge import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

subset_profile = _impl.subset_profile
taylor_shift = _impl.taylor_shift
sign_variations = _impl.sign_variations


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from relforge import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
