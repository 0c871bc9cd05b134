"""GF(p) hot loops with a compiled core and a numpy fallback.

The compiled extension is used when importable; set ``RML_PURE_PYTHON=1``
to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("RML_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _pykernels
        BACKEND = "python"

rref_modp = _impl.rref_modp
batch_rank_modp = _impl.batch_rank_modp
rank_distribution_modp = _impl.rank_distribution_modp

__all__ = ["BACKEND", "rref_modp", "batch_rank_modp", "rank_distribution_modp"]
