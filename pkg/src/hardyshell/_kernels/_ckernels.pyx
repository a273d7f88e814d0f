# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``."""

import numpy as np

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)

cdef extern from "math.h" nogil:
    double sin(double)
    double cos(double)
    double exp(double)
    double sinh(double)
    double cosh(double)

cdef double complex I = 1j


cdef inline double complex _csin(double complex w) nogil:
    return sin(w.real) * cosh(w.imag) + I * (cos(w.real) * sinh(w.imag))


cdef inline double complex _ccos(double complex w) nogil:
    return cos(w.real) * cosh(w.imag) - I * (sin(w.real) * sinh(w.imag))


cdef inline double complex _chi(double r, double complex k, double complex kappa, double complex inv_kappa,
                                double complex s_a, double complex kc_a,
                                double complex c_in, double complex c_out,
                                double a, double b) nogil:
    # real libm calls only: complex division and cexp dominate otherwise
    cdef double x, c, s, g
    if r <= a:
        return _csin(k * r)
    if r <= b:
        x = r - a
        if kappa == 0:
            return s_a + kc_a * x
        return s_a * _ccos(kappa * x) + kc_a * _csin(kappa * x) * inv_kappa
    c = cos(k.real * r)
    s = sin(k.real * r)
    g = exp(-k.imag * r)
    return c_in * ((c - I * s) / g) + c_out * (g * (c + I * s))


cdef _inverse(kappa):
    kap = np.asarray(kappa, dtype=complex)
    safe = np.where(kap == 0, 1.0, kap)
    return np.ascontiguousarray(np.where(kap == 0, 0.0, 1.0 / safe))


def chi_matrix(r, k, kappa, s_a, kc_a, c_in, c_out, double a, double b):
    cdef const double[::1] rv = np.ascontiguousarray(r, dtype=float)
    cdef const double complex[::1] kv = np.ascontiguousarray(k, dtype=complex)
    cdef const double complex[::1] kap = np.ascontiguousarray(kappa, dtype=complex)
    cdef const double complex[::1] ik = _inverse(kappa)
    cdef const double complex[::1] sa = np.ascontiguousarray(s_a, dtype=complex)
    cdef const double complex[::1] kc = np.ascontiguousarray(kc_a, dtype=complex)
    cdef const double complex[::1] ci = np.ascontiguousarray(c_in, dtype=complex)
    cdef const double complex[::1] co = np.ascontiguousarray(c_out, dtype=complex)
    cdef Py_ssize_t nr = rv.shape[0], nk = kv.shape[0], i, j
    out = np.empty((nr, nk), dtype=complex)
    cdef double complex[:, ::1] ov = out
    with nogil:
        for i in range(nr):
            for j in range(nk):
                ov[i, j] = _chi(rv[i], kv[j], kap[j], ik[j], sa[j], kc[j], ci[j], co[j], a, b)
    return out


def chi_apply_k(r, coeff_r, k, kappa, s_a, kc_a, c_in, c_out, double a, double b):
    cdef const double[::1] rv = np.ascontiguousarray(r, dtype=float)
    cdef const double complex[::1] cr = np.ascontiguousarray(coeff_r, dtype=complex)
    cdef const double complex[::1] kv = np.ascontiguousarray(k, dtype=complex)
    cdef const double complex[::1] kap = np.ascontiguousarray(kappa, dtype=complex)
    cdef const double complex[::1] ik = _inverse(kappa)
    cdef const double complex[::1] sa = np.ascontiguousarray(s_a, dtype=complex)
    cdef const double complex[::1] kc = np.ascontiguousarray(kc_a, dtype=complex)
    cdef const double complex[::1] ci = np.ascontiguousarray(c_in, dtype=complex)
    cdef const double complex[::1] co = np.ascontiguousarray(c_out, dtype=complex)
    cdef Py_ssize_t nr = rv.shape[0], nk = kv.shape[0], i, j
    cdef double complex acc
    out = np.empty(nk, dtype=complex)
    cdef double complex[::1] ov = out
    with nogil:
        for j in range(nk):
            acc = 0
            for i in range(nr):
                acc = acc + cr[i] * _chi(rv[i], kv[j], kap[j], ik[j], sa[j], kc[j], ci[j], co[j], a, b)
            ov[j] = acc
    return out


def chi_apply_r(r, coeff_k, k, kappa, s_a, kc_a, c_in, c_out, double a, double b):
    cdef const double[::1] rv = np.ascontiguousarray(r, dtype=float)
    cdef const double complex[::1] ck = np.ascontiguousarray(coeff_k, dtype=complex)
    cdef const double complex[::1] kv = np.ascontiguousarray(k, dtype=complex)
    cdef const double complex[::1] kap = np.ascontiguousarray(kappa, dtype=complex)
    cdef const double complex[::1] ik = _inverse(kappa)
    cdef const double complex[::1] sa = np.ascontiguousarray(s_a, dtype=complex)
    cdef const double complex[::1] kc = np.ascontiguousarray(kc_a, dtype=complex)
    cdef const double complex[::1] ci = np.ascontiguousarray(c_in, dtype=complex)
    cdef const double complex[::1] co = np.ascontiguousarray(c_out, dtype=complex)
    cdef Py_ssize_t nr = rv.shape[0], nk = kv.shape[0], i, j
    cdef double complex acc
    out = np.empty(nr, dtype=complex)
    cdef double complex[::1] ov = out
    with nogil:
        for i in range(nr):
            acc = 0
            for j in range(nk):
                acc = acc + ck[j] * _chi(rv[i], kv[j], kap[j], ik[j], sa[j], kc[j], ci[j], co[j], a, b)
            ov[i] = acc
    return out


def laplace_sum(t, amp, z):
    cdef const double[::1] tv = np.ascontiguousarray(t, dtype=float)
    cdef const double complex[::1] av = np.ascontiguousarray(amp, dtype=complex)
    cdef const double complex[::1] zv = np.ascontiguousarray(z, dtype=complex)
    cdef Py_ssize_t nt = tv.shape[0], nz = zv.shape[0], i, j
    cdef double complex acc
    out = np.empty(nz, dtype=complex)
    cdef double complex[::1] ov = out
    with nogil:
        for j in range(nz):
            acc = 0
            for i in range(nt):
                acc = acc + av[i] * cexp(-I * zv[j] * tv[i])
            ov[j] = acc
    return out


def laplace_sum_uniform(t, amp, double x0, double dx, Py_ssize_t n, double y):
    # exp(-i z_j t) advanced by a per-node rotation; reseeded every 64 steps
    # to keep the accumulated rounding of the recurrence below 1e-13.
    cdef const double[::1] tv = np.ascontiguousarray(t, dtype=float)
    cdef const double complex[::1] av = np.ascontiguousarray(amp, dtype=complex)
    cdef Py_ssize_t nt = tv.shape[0], i, j
    phase_np = np.empty(nt, dtype=complex)
    step_np = np.empty(nt, dtype=complex)
    cdef double complex[::1] phase = phase_np
    cdef double complex[::1] step = step_np
    out = np.zeros(n, dtype=complex)
    cdef double complex[::1] ov = out
    cdef double complex z
    with nogil:
        for i in range(nt):
            step[i] = cexp(-I * dx * tv[i])
        for j in range(n):
            if j % 64 == 0:
                z = x0 + j * dx + I * y
                for i in range(nt):
                    phase[i] = av[i] * cexp(-I * z * tv[i])
            for i in range(nt):
                ov[j] = ov[j] + phase[i]
                phase[i] = phase[i] * step[i]
    return out
