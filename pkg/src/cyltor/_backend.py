"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``CYLTOR_PURE=1`` in the environment to force the fallback; both kernels
produce identical exact results, so the switch only affects speed.
"""

import os

if os.environ.get("CYLTOR_PURE"):
    from . import _kernel_py as _kernel_mod

    BACKEND = "python"
else:
    try:
        from . import _kernel as _kernel_mod  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernel_py as _kernel_mod

        BACKEND = "python"

mul_strata = _kernel_mod.mul_strata
add_into = _kernel_mod.add_into
