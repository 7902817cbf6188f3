# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled gate kernels; same contract as ``qadv._pykernels``.

Complex arithmetic is spelled out on interleaved (re, im) doubles so the
compiler never falls back to the C99 ``__muldc3`` slow path.
"""

cimport cython


cdef inline void _mac2(double* s, Py_ssize_t i0, Py_ssize_t i1, double* u) noexcept nogil:
    cdef double ar = s[2 * i0], ai = s[2 * i0 + 1]
    cdef double br = s[2 * i1], bi = s[2 * i1 + 1]
    s[2 * i0] = u[0] * ar - u[1] * ai + u[2] * br - u[3] * bi
    s[2 * i0 + 1] = u[0] * ai + u[1] * ar + u[2] * bi + u[3] * br
    s[2 * i1] = u[4] * ar - u[5] * ai + u[6] * br - u[7] * bi
    s[2 * i1 + 1] = u[4] * ai + u[5] * ar + u[6] * bi + u[7] * br


def apply_1q(double complex[:, ::1] states, double complex[:, ::1] u, int q):
    cdef Py_ssize_t nb = states.shape[0]
    cdef Py_ssize_t d = states.shape[1]
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << q
    cdef Py_ssize_t b, blk, j, k
    cdef double uu[8]
    cdef double* s
    uu[0] = u[0, 0].real; uu[1] = u[0, 0].imag
    uu[2] = u[0, 1].real; uu[3] = u[0, 1].imag
    uu[4] = u[1, 0].real; uu[5] = u[1, 0].imag
    uu[6] = u[1, 1].real; uu[7] = u[1, 1].imag
    with nogil:
        for b in range(nb):
            s = <double*>&states[b, 0]
            for k in range(d // (2 * stride)):
                blk = 2 * stride * k
                for j in range(blk, blk + stride):
                    _mac2(s, j, j + stride, uu)


def apply_cnot(double complex[:, ::1] states, int control, int target):
    cdef Py_ssize_t nb = states.shape[0]
    cdef Py_ssize_t d = states.shape[1]
    cdef Py_ssize_t cbit = (<Py_ssize_t>1) << control
    cdef Py_ssize_t tbit = (<Py_ssize_t>1) << target
    cdef Py_ssize_t b, blk, j, k
    cdef double complex tmp
    with nogil:
        for b in range(nb):
            for k in range(d // (2 * tbit)):
                blk = 2 * tbit * k
                for j in range(blk, blk + tbit):
                    if j & cbit:
                        tmp = states[b, j]
                        states[b, j] = states[b, j + tbit]
                        states[b, j + tbit] = tmp


def apply_2q(double complex[:, ::1] states, double complex[:, ::1] u, int q1, int q2):
    cdef Py_ssize_t nb = states.shape[0]
    cdef Py_ssize_t d = states.shape[1]
    cdef Py_ssize_t m1 = (<Py_ssize_t>1) << q1
    cdef Py_ssize_t m2 = (<Py_ssize_t>1) << q2
    cdef Py_ssize_t b, i, r, c
    cdef Py_ssize_t idx[4]
    cdef double ar[4]
    cdef double ai[4]
    cdef double ur[16]
    cdef double ui[16]
    cdef double accr, acci
    cdef double* s
    for r in range(4):
        for c in range(4):
            ur[4 * r + c] = u[r, c].real
            ui[4 * r + c] = u[r, c].imag
    with nogil:
        for b in range(nb):
            s = <double*>&states[b, 0]
            for i in range(d):
                if (i & m1) or (i & m2):
                    continue
                idx[0] = i
                idx[1] = i | m2
                idx[2] = i | m1
                idx[3] = i | m1 | m2
                for r in range(4):
                    ar[r] = s[2 * idx[r]]
                    ai[r] = s[2 * idx[r] + 1]
                for r in range(4):
                    accr = 0.0
                    acci = 0.0
                    for c in range(4):
                        accr = accr + ur[4 * r + c] * ar[c] - ui[4 * r + c] * ai[c]
                        acci = acci + ur[4 * r + c] * ai[c] + ui[4 * r + c] * ar[c]
                    s[2 * idx[r]] = accr
                    s[2 * idx[r] + 1] = acci
