"""Backend selection for the batch kernels.

The compiled extension is used when it was built and CONSTNORMAL_PURE is not
set to 1; otherwise the numpy implementation is used. Both give identical
results.
"""

import os

from . import _pykernels

try:
    if os.environ.get("CONSTNORMAL_PURE") == "1":
        raise ImportError("pure backend requested")
    from . import _speedups as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

DEFAULT = "compiled" if _compiled is not None else "python"


def get(name=None):
    name = name or DEFAULT
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available (have {sorted(BACKENDS)})") from None


def count_in_ball(code, params, lo, hi, center, r, h, backend=None):
    return get(backend).count_in_ball(code, params, lo, hi, center, r, h)


def w3_endpoints(shifts, times, ks, backend=None):
    return get(backend).w3_endpoints(shifts, times, ks)
