"""Backend selection for the term kernels.

The compiled extension is used when it imports; set ``COXEMBED_PURE_PYTHON=1``
to force the pure-Python implementation.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("COXEMBED_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

mul_terms = _impl.mul_terms
lincomb_terms = _impl.lincomb_terms
scale_terms = _impl.scale_terms
exact_div_terms = _impl.exact_div_terms
content_gcd = _impl.content_gcd

__all__ = [
    "BACKEND",
    "mul_terms",
    "lincomb_terms",
    "scale_terms",
    "exact_div_terms",
    "content_gcd",
]
