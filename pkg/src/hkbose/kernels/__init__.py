"""Hot-kernel backend selection.

The compiled Cython extension is preferred when present; the numpy reference
implementation is the fallback.  Set HKBOSE_KERNELS=py to force the fallback
(used by the benchmark and the backend-parity tests).
"""

import os

_forced = os.environ.get("HKBOSE_KERNELS", "").lower()

if _forced in ("py", "python", "ref"):
    from . import _ref as _impl
    BACKEND = "python"
elif _forced in ("c", "compiled", "cython"):
    from . import _core as _impl  # noqa: F401  (ImportError is intentional here)
    BACKEND = "compiled"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        from . import _ref as _impl
        BACKEND = "python"

gn_integrand_batch = _impl.gn_integrand_batch
wigner_series_batch = _impl.wigner_series_batch
