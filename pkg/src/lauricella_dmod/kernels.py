"""Backend selection for the polynomial kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``LAURICELLA_DMOD_PURE=1``
forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("LAURICELLA_DMOD_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

poly_mul = _impl.poly_mul
poly_divexact = _impl.poly_divexact
weyl_mul = _impl.weyl_mul


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
