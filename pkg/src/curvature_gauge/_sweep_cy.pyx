# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep over shape operators S(u) = sum_a u_a B_a.

For every direction u in a batch this assembles the symmetric matrix S(u)
and extracts |det S(u)| together with the inertia index
#{eigenvalues < -tol * max(1, ||S||_F)}.  Neither quantity needs an
eigendecomposition: S is reduced to tridiagonal form by Householder
similarity, the determinant follows from the three-term continuant
recurrence, and the index is a Sturm count of the shifted LDL^T pivots at
sigma = -threshold (negative pivots of T - sigma I count eigenvalues below
sigma).  That is a handful of flops for the small matrices the quadrature
produces, far below a full eigensolve.
"""

from libc.math cimport fabs, sqrt
from libc.stdlib cimport free, malloc

import numpy as np


cdef void _tridiagonalize(double* s, double* diag, double* off, double* v,
                          double* w, int n) noexcept nogil:
    """Householder reduction of symmetric ``s`` (n x n, row major) in place.

    On exit diag[0..n-1] and off[0..n-2] hold the tridiagonal entries.
    ``s`` is destroyed; ``v`` and ``w`` are caller-provided length-n scratch.
    """
    cdef int k, i, j
    cdef double norm_x, alpha, vnorm_sq, dot, coeff
    if n == 1:
        diag[0] = s[0]
        return
    for k in range(n - 2):
        norm_x = 0.0
        for i in range(k + 1, n):
            norm_x += s[i * n + k] * s[i * n + k]
        norm_x = sqrt(norm_x)
        if norm_x > 0.0:
            alpha = -norm_x if s[(k + 1) * n + k] >= 0.0 else norm_x
            vnorm_sq = 0.0
            for i in range(k + 1, n):
                v[i] = s[i * n + k]
                if i == k + 1:
                    v[i] -= alpha
                vnorm_sq += v[i] * v[i]
            if vnorm_sq > 0.0:
                # w = 2 S v / |v|^2, then rank-2 update of the trailing block
                for i in range(k + 1, n):
                    dot = 0.0
                    for j in range(k + 1, n):
                        dot += s[i * n + j] * v[j]
                    w[i] = 2.0 * dot / vnorm_sq
                dot = 0.0
                for i in range(k + 1, n):
                    dot += v[i] * w[i]
                coeff = dot / vnorm_sq
                for i in range(k + 1, n):
                    w[i] -= coeff * v[i]
                for i in range(k + 1, n):
                    for j in range(k + 1, n):
                        s[i * n + j] -= v[i] * w[j] + w[i] * v[j]
                s[(k + 1) * n + k] = alpha
                s[k * n + k + 1] = alpha
    for i in range(n):
        diag[i] = s[i * n + i]
    for i in range(n - 1):
        off[i] = s[(i + 1) * n + i]


cdef double _continuant_det(const double* diag, const double* off, int n) noexcept nogil:
    """det of the tridiagonal matrix via the three-term recurrence."""
    cdef double p_prev = 1.0
    cdef double p = diag[0]
    cdef double p_next
    cdef int i
    for i in range(1, n):
        p_next = diag[i] * p - off[i - 1] * off[i - 1] * p_prev
        p_prev = p
        p = p_next
    return p


cdef long long _sturm_count_below(const double* diag, const double* off, int n,
                                  double sigma, double pivmin) noexcept nogil:
    """#eigenvalues of the tridiagonal matrix strictly below sigma."""
    cdef long long count = 0
    cdef double d = diag[0] - sigma
    cdef int i
    if fabs(d) < pivmin:
        d = -pivmin
    if d < 0.0:
        count += 1
    for i in range(1, n):
        d = diag[i] - sigma - off[i - 1] * off[i - 1] / d
        if fabs(d) < pivmin:
            d = -pivmin
        if d < 0.0:
            count += 1
    return count


def sweep(const double[:, :, ::1] comps, const double[:, ::1] dirs, double tol,
          bint want_index):
    """abs-det and inertia of S(u) = sum_a u_a B_a for every row u of ``dirs``.

    comps is the (p, n, n) stack of symmetric component matrices, dirs is
    (F, p).  Returns (absdet, index) with index None when not requested.
    """
    cdef Py_ssize_t p = comps.shape[0]
    cdef Py_ssize_t n = comps.shape[1]
    cdef Py_ssize_t nf = dirs.shape[0]
    if dirs.shape[1] != p:
        raise ValueError("direction width must equal number of components")

    absdet = np.empty(nf, dtype=np.float64)
    index = np.zeros(nf, dtype=np.int64)
    cdef double[::1] av = absdet
    cdef long long[::1] iv = index
    cdef double* work = <double*> malloc((n * n + 4 * n) * sizeof(double))
    if work == NULL:
        raise MemoryError()
    cdef double* s = work
    cdef double* diag = work + n * n
    cdef double* off = diag + n
    cdef double* v = off + n
    cdef double* w = v + n

    cdef Py_ssize_t f, a, i, j
    cdef double acc, fro, thr, pivmin, offmax
    try:
        with nogil:
            for f in range(nf):
                fro = 0.0
                for i in range(n):
                    for j in range(n):
                        acc = 0.0
                        for a in range(p):
                            acc += dirs[f, a] * comps[a, i, j]
                        s[i * n + j] = acc
                        fro += acc * acc
                fro = sqrt(fro)
                _tridiagonalize(s, diag, off, v, w, <int> n)
                av[f] = fabs(_continuant_det(diag, off, <int> n))
                if want_index:
                    thr = tol * (fro if fro > 1.0 else 1.0)
                    offmax = 1e-300
                    for i in range(n - 1):
                        if fabs(off[i]) > offmax:
                            offmax = fabs(off[i])
                    pivmin = 1e-308 * offmax * offmax
                    if pivmin < 1e-308:
                        pivmin = 1e-308
                    iv[f] = _sturm_count_below(diag, off, <int> n, -thr, pivmin)
    finally:
        free(work)
    return absdet, (index if want_index else None)
