"""Numeric kernels with a compiled core and a numpy fallback.

The compiled extension (holomap._kernels._ckernels, built from Cython) is
preferred when importable; otherwise the numpy implementations in
_pykernels are used. Set HOLOMAP_KERNELS=py or HOLOMAP_KERNELS=c to force
a backend (forcing c raises if the extension is missing).
"""

import os

from . import _pykernels

_forced = os.environ.get("HOLOMAP_KERNELS", "").strip().lower()

if _forced in ("py", "python"):
    _impl = _pykernels
    BACKEND = "python"
elif _forced == "c":
    from . import _ckernels as _impl

    BACKEND = "c"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "c"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

abs2p_sum = _impl.abs2p_sum
pow_int = _impl.pow_int
blaschke = _impl.blaschke
mobius_scalar = _impl.mobius_scalar
cpow = _impl.cpow

__all__ = ["BACKEND", "abs2p_sum", "pow_int", "blaschke", "mobius_scalar", "cpow"]
