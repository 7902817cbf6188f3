"""Backend selection for the statevector gate kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation is loaded. Set ``QADV_KERNELS=python`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("QADV_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

apply_1q = _impl.apply_1q
apply_cnot = _impl.apply_cnot
apply_2q = _impl.apply_2q

__all__ = ["BACKEND", "apply_1q", "apply_cnot", "apply_2q"]
