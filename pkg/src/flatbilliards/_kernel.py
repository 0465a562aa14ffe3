"""Select the polynomial kernel: compiled if available, else pure Python.

Set FLATBILLIARDS_PURE=1 to force the pure-Python kernel.
"""

import os

if os.environ.get("FLATBILLIARDS_PURE") == "1":
    from . import _kernel_fallback as _impl

    KERNEL = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        KERNEL = "compiled"
    except ImportError:
        from . import _kernel_fallback as _impl

        KERNEL = "python"

convolve = _impl.convolve
reduce_tail = _impl.reduce_tail
mul_reduced = _impl.mul_reduced
