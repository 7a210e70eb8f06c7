"""Select the compiled kernels when available, else the numpy fallback.

Set ``CAUSALKIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

BACKEND = "python"
_impl = _fallback
if os.environ.get("CAUSALKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback

sq_dists = _impl.sq_dists
gaussian_gram = _impl.gaussian_gram
condensed_distances = _impl.condensed_distances
bin_codes = _impl.bin_codes
histogram_counts = _impl.histogram_counts

IMPLEMENTATIONS = {"python": _fallback}
if BACKEND == "cython":
    IMPLEMENTATIONS["cython"] = _impl
