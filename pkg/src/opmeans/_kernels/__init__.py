"""Hot scalar kernels over discrete generator measures.

Two interchangeable implementations exist: numba-compiled loops
(``_numba``) and vectorized numpy (``_numpy``).  The numba path is used when
numba imports cleanly, unless the environment variable ``OPMEANS_BACKEND``
is set to ``numpy``.
"""

import os

from . import _numpy

BACKEND = "numpy"
_impl = _numpy

if os.environ.get("OPMEANS_BACKEND", "numba").strip().lower() != "numpy":
    try:
        from . import _numba as _impl  # noqa: F811

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba missing
        _impl = _numpy

fmu = _impl.fmu
fmu_prime = _impl.fmu_prime
fmu_loewner = _impl.fmu_loewner
fmu_inverse = _impl.fmu_inverse
g_potential = _impl.g_potential

__all__ = ["BACKEND", "fmu", "fmu_prime", "fmu_loewner", "fmu_inverse", "g_potential"]
