# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trajectory kernels; same contract as ``_pykernels``."""
import numpy as np

from libc.math cimport sqrt, cos, sin

ctypedef double complex cplx


cdef inline cplx _pauli(int k, int r, int c) noexcept nogil:
    if k == 0:
        return 1.0 if r != c else 0.0
    if k == 1:
        if r == c:
            return 0.0
        return -1j if r == 0 else 1j
    if r != c:
        return 0.0
    return 1.0 if r == 0 else -1.0


cdef inline double _abs2(cplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


def evolve_states(eigvals, eigvecs, psi0, times):
    cdef const double[::1] w = np.ascontiguousarray(eigvals, dtype=np.float64)
    cdef const cplx[:, ::1] v = np.ascontiguousarray(eigvecs, dtype=np.complex128)
    cdef const cplx[::1] p0 = np.ascontiguousarray(psi0, dtype=np.complex128)
    cdef const double[::1] ts = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t n = ts.shape[0], d = w.shape[0]
    out = np.empty((n, d), dtype=np.complex128)
    cdef cplx[:, ::1] o = out
    cdef cplx[::1] c = np.zeros(d, dtype=np.complex128)
    cdef cplx[::1] pc = np.zeros(d, dtype=np.complex128)
    cdef Py_ssize_t i, j, k
    cdef double arg
    cdef cplx acc

    with nogil:
        for k in range(d):
            acc = 0
            for j in range(d):
                acc = acc + v[j, k].conjugate() * p0[j]
            c[k] = acc
        for i in range(n):
            for k in range(d):
                arg = -w[k] * ts[i]
                pc[k] = (cos(arg) + 1j * sin(arg)) * c[k]
            for j in range(d):
                acc = 0
                for k in range(d):
                    acc = acc + v[j, k] * pc[k]
                o[i, j] = acc
    return out


cdef void _correlations(const cplx* m, double* t) noexcept nogil:
    # t[3*i + j] = <psi| s_i (x) s_j |psi>, psi[2a + b] = m[a, b]
    cdef int i, j, a, b, c, d
    cdef cplx acc
    for i in range(3):
        for j in range(3):
            acc = 0
            for a in range(2):
                for b in range(2):
                    for c in range(2):
                        for d in range(2):
                            acc = acc + m[2 * a + b].conjugate() * _pauli(i, a, c) * _pauli(j, b, d) * m[2 * c + d]
            t[3 * i + j] = acc.real


def correlation_tensors(states):
    cdef const cplx[:, ::1] s = np.ascontiguousarray(states, dtype=np.complex128)
    cdef Py_ssize_t n = s.shape[0], i
    out = np.empty((n, 3, 3), dtype=np.float64)
    cdef double[:, :, ::1] o = out
    with nogil:
        for i in range(n):
            _correlations(&s[i, 0], &o[i, 0, 0])
    return out


def pure_state_observables(states, h_free):
    cdef const cplx[:, ::1] s = np.ascontiguousarray(states, dtype=np.complex128)
    cdef const cplx[:, ::1] h = np.ascontiguousarray(h_free, dtype=np.complex128)
    cdef Py_ssize_t n = s.shape[0], i, j, k
    energy = np.empty(n, dtype=np.float64)
    coherence = np.empty(n, dtype=np.float64)
    steering = np.empty(n, dtype=np.float64)
    cdef double[::1] e = energy, q = coherence, st = steering
    cdef double t[9]
    cdef cplx acc, ra00, ra01, ra11, rb00, rb01, rb11
    cdef const cplx* m
    cdef double pa, pb, q2a, q2b, tt

    with nogil:
        for i in range(n):
            m = &s[i, 0]
            acc = 0
            for j in range(4):
                for k in range(4):
                    acc = acc + m[j].conjugate() * h[j, k] * m[k]
            e[i] = acc.real

            ra00 = m[0] * m[0].conjugate() + m[1] * m[1].conjugate()
            ra11 = m[2] * m[2].conjugate() + m[3] * m[3].conjugate()
            ra01 = m[0] * m[2].conjugate() + m[1] * m[3].conjugate()
            rb00 = m[0] * m[0].conjugate() + m[2] * m[2].conjugate()
            rb11 = m[1] * m[1].conjugate() + m[3] * m[3].conjugate()
            rb01 = m[0] * m[1].conjugate() + m[2] * m[3].conjugate()
            pa = _abs2(ra00) + _abs2(ra11) + 2 * _abs2(ra01)
            pb = _abs2(rb00) + _abs2(rb11) + 2 * _abs2(rb01)
            q2a = 2 * pa - 1
            q2b = 2 * pb - 1
            if q2a < 0:
                q2a = 0
            if q2b < 0:
                q2b = 0
            q[i] = sqrt((q2a + q2b) / 2)

            _correlations(m, t)
            tt = 0
            for j in range(9):
                tt = tt + t[j] * t[j]
            st[i] = sqrt(tt)
    return energy, coherence, steering
