"""Backend selection for the hot kernels.

The compiled Cython backend is used when available; the pure-Python twin is the
fallback. Set ``AQRM_PURE_PYTHON=1`` to force the fallback (useful for
debugging and for the backend benchmark).
"""

import os

from . import _pykernels

if os.environ.get("AQRM_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _cykernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
NORM_FLOOR = _impl.NORM_FLOOR
normalization = _impl.normalization
sigma_z = _impl.sigma_z
photon_number = _impl.photon_number
correlation = _impl.correlation
sigma_x = _impl.sigma_x
energy = _impl.energy
minimize_energy = _impl.minimize_energy

__all__ = [
    "BACKEND",
    "NORM_FLOOR",
    "normalization",
    "sigma_z",
    "photon_number",
    "correlation",
    "sigma_x",
    "energy",
    "minimize_energy",
]
