"""Backend selection for the pairwise scan kernels.

The compiled extension is preferred when it imported cleanly; set
HAUSQUOT_FORCE_PYTHON=1 to pin the pure-python fallback (the benchmark and
the backend-agreement tests do this).  Both backends compute the same
directed max-min reduction over a monotone surrogate of the geodesic
distance; the surrogate is inverted only after the reduction.
"""

import os

from . import _scan_py
from .geometry import (KIND_EUCLIDEAN, KIND_FLAT_TORUS2,
                       KIND_HYPERBOLIC_HALF_PLANE, KIND_SPHERE2,
                       kernel_transform, pairwise_kernel_id)

__all__ = ["BACKEND", "scan_op", "directed_surrogate", "directed_distance"]

_FORCED = os.environ.get("HAUSQUOT_FORCE_PYTHON", "") not in ("", "0")

if not _FORCED:
    try:
        from . import _scan_cy as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _scan_py
        BACKEND = "python"
else:
    _impl = _scan_py
    BACKEND = "python"

# Sphere points are packed as embedded 3-vectors, so their surrogate is the
# plain squared chord and reuses the euclidean op.
_SCAN_OPS = {
    KIND_EUCLIDEAN: _scan_py.OP_EUCLID_SQ,
    KIND_FLAT_TORUS2: _scan_py.OP_TORUS2_SQ,
    KIND_HYPERBOLIC_HALF_PLANE: _scan_py.OP_HALFPLANE_Q,
    KIND_SPHERE2: _scan_py.OP_EUCLID_SQ,
}


def scan_op(m):
    """Scan-kernel op id for a model manifold."""
    pairwise_kernel_id(m)  # raises KeyError on unknown kinds
    return _SCAN_OPS[m.kind]


def directed_surrogate(m, A, B, backend=None):
    """Directed max-min surrogate scan over packed arrays; (value, index)."""
    impl = _impl
    if backend == "python":
        impl = _scan_py
    elif backend == "compiled":
        from . import _scan_cy as impl  # noqa: F811 -- explicit request
    return impl.directed_scan(scan_op(m), A, B)


def directed_distance(m, A, B, backend=None):
    """max_a min_b geodesic distance over packed arrays; (value, index)."""
    s, idx = directed_surrogate(m, A, B, backend=backend)
    return kernel_transform(m, s), idx
