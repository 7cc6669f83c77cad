"""Integer kernels with a numba path and a pure-numpy fallback.

The backend is picked once at import time. Set ``PININDEX_DISABLE_NUMBA=1``
to force the numpy path; it is also used when numba cannot be imported.
Both backends return identical results.
"""

import os

from . import _numpy

BACKEND = "numpy"
_impl = _numpy

if os.environ.get("PININDEX_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _numba
    except ImportError:  # pragma: no cover - numba missing
        pass
    else:
        _impl = _numba
        BACKEND = "numba"

blade_product_signs = _impl.blade_product_signs
exterior_tables = _impl.exterior_tables
binomial_parities = _impl.binomial_parities
q_numerators = _impl.q_numerators
rank_mod_p = _impl.rank_mod_p

# a prime below 2**31 so products of residues stay inside int64
PRIME = 2_147_483_647

__all__ = [
    "BACKEND",
    "PRIME",
    "binomial_parities",
    "blade_product_signs",
    "exterior_tables",
    "q_numerators",
    "rank_mod_p",
]
