# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled path continuation of arg det(I - sA), s in [0, 1]."""

from libc.math cimport fabs, fmin, M_PI
from libc.stdlib cimport malloc, free

cdef extern from "complex.h" nogil:
    double carg(double complex)
    double cabs(double complex)
    double complex conj(double complex)

cdef enum:
    MAX_N = 64

cdef double MAX_STEP = 0.25
cdef double MIN_STEP = 1e-15
cdef double PHASE_CAP = M_PI / 2
cdef double CONSISTENCY = 1e-9


cdef double complex _det_shifted(const double complex* A, int n, double s,
                                 double complex* a) noexcept nogil:
    cdef int i, j, k, r, piv
    cdef double best, v
    cdef double complex det = 1.0, p, f, tmp
    for i in range(n):
        for j in range(n):
            a[i * n + j] = (1.0 if i == j else 0.0) - s * A[i * n + j]
    for k in range(n):
        piv = k
        best = cabs(a[k * n + k])
        for r in range(k + 1, n):
            v = cabs(a[r * n + k])
            if v > best:
                best = v
                piv = r
        if best == 0.0:
            return 0.0
        if piv != k:
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[piv * n + j]
                a[piv * n + j] = tmp
            det = -det
        p = a[k * n + k]
        det = det * p
        for r in range(k + 1, n):
            f = a[r * n + k] / p
            if f != 0:
                for j in range(k + 1, n):
                    a[r * n + j] = a[r * n + j] - f * a[k * n + j]
    return det


cdef inline double _phase(double complex u, double complex v) noexcept nogil:
    return carg(v * conj(u))


cdef int _continue(const double complex* A, int n, double* out, double* s_fail,
                   double complex* work) noexcept nogil:
    cdef double s0 = 0.0, s1, ds, acc = 0.0, d, d1, d2
    cdef double complex f0 = 1.0, f1, fm
    ds = fmin(MAX_STEP, 1.0 / (4 * n))
    while s0 < 1.0:
        s1 = fmin(1.0, s0 + ds)
        f1 = _det_shifted(A, n, s1, work)
        fm = _det_shifted(A, n, 0.5 * (s0 + s1), work)
        if f1 != 0 and fm != 0:
            d = _phase(f0, f1)
            d1 = _phase(f0, fm)
            d2 = _phase(fm, f1)
            if (fabs(d) < PHASE_CAP and fabs(d1) < PHASE_CAP and fabs(d2) < PHASE_CAP
                    and fabs(d1 + d2 - d) < CONSISTENCY):
                acc += d
                s0 = s1
                f0 = f1
                ds = fmin(MAX_STEP, 2.0 * ds)
                continue
        ds *= 0.5
        if ds < MIN_STEP:
            out[0] = acc
            s_fail[0] = s0
            return 1
    out[0] = acc
    s_fail[0] = 1.0
    return 0


def arg_continuation(const double complex[:, ::1] A):
    """Continuous argument of det(I - sA) from s = 0 to 1; returns (status, value, failing s)."""
    cdef int n = A.shape[0]
    cdef double out = 0.0, s_fail = 0.0
    cdef int status
    cdef double complex work[MAX_N * MAX_N]
    if A.shape[1] != n:
        raise ValueError("matrix must be square")
    if n > MAX_N or n < 1:
        raise ValueError(f"matrix size must be between 1 and {MAX_N}")
    with nogil:
        status = _continue(&A[0, 0], n, &out, &s_fail, work)
    return status, out, s_fail


def arg_continuation_batch(const double complex[:, :, ::1] As):
    """Same as :func:`arg_continuation` over a stack of matrices, without the GIL."""
    cdef Py_ssize_t m = As.shape[0], t
    cdef int n = As.shape[1]
    if As.shape[2] != n:
        raise ValueError("matrices must be square")
    if n > MAX_N or n < 1:
        raise ValueError(f"matrix size must be between 1 and {MAX_N}")
    status = [0] * m
    values = [0.0] * m
    fails = [0.0] * m
    cdef int* st = <int*> malloc(m * sizeof(int) + 1)
    cdef double* val = <double*> malloc(m * sizeof(double) + 1)
    cdef double* sf = <double*> malloc(m * sizeof(double) + 1)
    cdef double complex work[MAX_N * MAX_N]
    if st == NULL or val == NULL or sf == NULL:
        free(st); free(val); free(sf)
        raise MemoryError()
    try:
        with nogil:
            for t in range(m):
                st[t] = _continue(&As[t, 0, 0], n, &val[t], &sf[t], work)
        for t in range(m):
            status[t] = st[t]
            values[t] = val[t]
            fails[t] = sf[t]
    finally:
        free(st); free(val); free(sf)
    return status, values, fails
