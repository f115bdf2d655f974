"""Pure-python directed max-min scans over packed point arrays.

Fallback backend used when the compiled extension is unavailable.  Works on
monotone distance surrogates (squared euclidean lengths, wrapped squared
lengths on the torus, the half-plane chordal ratio) so the reduction is
cheap; callers map the reduced value back through the matching inverse
transform.  The per-pair arithmetic mirrors the compiled kernels operation
for operation so both backends agree to rounding error.
"""

import numpy as np

OP_EUCLID_SQ = 0
OP_TORUS2_SQ = 1
OP_HALFPLANE_Q = 2

# Rows per chunk are sized so a chunk of the (rows, nb, dim) difference
# tensor stays around 16 MB.
_CHUNK_BUDGET = 2_000_000


def _surrogate_block(op, A, B):
    if op == OP_EUCLID_SQ:
        diff = A[:, None, :] - B[None, :, :]
        return (diff * diff).sum(axis=-1)
    if op == OP_TORUS2_SQ:
        diff = np.abs(A[:, None, :] - B[None, :, :])
        diff = np.minimum(diff, 1.0 - diff)
        return (diff * diff).sum(axis=-1)
    if op == OP_HALFPLANE_Q:
        dx = A[:, None, 0] - B[None, :, 0]
        dy = A[:, None, 1] - B[None, :, 1]
        num = dx * dx + dy * dy
        den = 2.0 * A[:, None, 1] * B[None, :, 1]
        return num / den
    raise ValueError("unknown scan op %r" % op)


def directed_scan(op, A, B):
    """max over rows of A of (min over rows of B) of the pair surrogate.

    Returns (value, index of the realising row of A).
    """
    A = np.ascontiguousarray(A, dtype=float)
    B = np.ascontiguousarray(B, dtype=float)
    na, nb = A.shape[0], B.shape[0]
    if na == 0 or nb == 0:
        raise ValueError("directed scan needs non-empty point sets")
    chunk = max(1, _CHUNK_BUDGET // max(nb * A.shape[1], 1))
    best = -1.0
    bidx = 0
    for start in range(0, na, chunk):
        block = _surrogate_block(op, A[start:start + chunk], B)
        mins = block.min(axis=1)
        k = int(np.argmax(mins))
        if mins[k] > best:
            best = float(mins[k])
            bidx = start + k
    return best, bidx
