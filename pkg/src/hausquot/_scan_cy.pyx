# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled directed max-min scans over packed point arrays.

Same contract as _scan_py.directed_scan.  Two exact shortcuts make the
quadratic scan cheap in practice: a row is abandoned as soon as its running
minimum falls at or below the current max (that row can no longer raise the
answer), and each row starts its sweep at the column where the previous row
stopped, which is usually close for spatially coherent inputs.  Neither
shortcut changes the returned value.
"""

from libc.math cimport INFINITY, fabs

OP_EUCLID_SQ = 0
OP_TORUS2_SQ = 1
OP_HALFPLANE_Q = 2


cdef inline double _pair(int op, const double* a, const double* b,
                         Py_ssize_t dim) nogil:
    cdef double s = 0.0
    cdef double diff, num, den
    cdef Py_ssize_t k
    if op == 0:
        for k in range(dim):
            diff = a[k] - b[k]
            s += diff * diff
        return s
    elif op == 1:
        for k in range(dim):
            diff = fabs(a[k] - b[k])
            if 1.0 - diff < diff:
                diff = 1.0 - diff
            s += diff * diff
        return s
    else:
        num = (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1])
        den = 2.0 * a[1] * b[1]
        return num / den


def directed_scan(int op, const double[:, ::1] A, const double[:, ::1] B):
    """max over rows of A of (min over rows of B) of the pair surrogate.

    Returns (value, index of the realising row of A).
    """
    cdef Py_ssize_t na = A.shape[0]
    cdef Py_ssize_t nb = B.shape[0]
    cdef Py_ssize_t dim = A.shape[1]
    if na == 0 or nb == 0:
        raise ValueError("directed scan needs non-empty point sets")
    if op < 0 or op > 2:
        raise ValueError("unknown scan op %r" % op)
    cdef double cmax = -1.0
    cdef double dmin, s
    cdef Py_ssize_t cidx = 0, i, j, k, jbest, j0 = 0
    with nogil:
        for i in range(na):
            dmin = INFINITY
            jbest = j0
            for k in range(nb):
                j = j0 + k
                if j >= nb:
                    j -= nb
                s = _pair(op, &A[i, 0], &B[j, 0], dim)
                if s < dmin:
                    dmin = s
                    jbest = j
                    if dmin <= cmax:
                        break
            if dmin > cmax:
                cmax = dmin
                cidx = i
            j0 = jbest
    return cmax, cidx
