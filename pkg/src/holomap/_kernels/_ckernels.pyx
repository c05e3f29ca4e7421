# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled implementations of the numeric kernels."""

import numpy as np

from libc.math cimport atan2, cos, exp, log, sin, sqrt


def abs2p_sum(z, two_p):
    """Row sums of |z_ij|**two_p[j] for a complex (N, d) array."""
    cdef const double complex[:, ::1] zv = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double[::1] pv = np.ascontiguousarray(two_p, dtype=np.float64)
    cdef Py_ssize_t n = zv.shape[0], d = zv.shape[1], i, j
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double acc, re, im, m2
    for i in range(n):
        acc = 0.0
        for j in range(d):
            re = zv[i, j].real
            im = zv[i, j].imag
            m2 = re * re + im * im
            if m2 > 0.0:
                acc += exp(0.5 * pv[j] * log(m2))
        ov[i] = acc
    return out


cdef inline double complex _ipow(double complex base, long e):
    cdef double complex acc = 1.0 + 0.0j
    cdef double complex b = base
    cdef long k = e if e >= 0 else -e
    while k:
        if k & 1:
            acc = acc * b
        b = b * b
        k >>= 1
    if e < 0:
        acc = 1.0 / acc
    return acc


def pow_int(z, e):
    """Componentwise integer powers z_ij ** e[j] (e may be negative)."""
    cdef const double complex[:, ::1] zv = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const long[::1] ev = np.ascontiguousarray(e, dtype=np.int64)
    cdef Py_ssize_t n = zv.shape[0], d = zv.shape[1], i, j
    out = np.empty((n, d), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    for i in range(n):
        for j in range(d):
            ov[i, j] = _ipow(zv[i, j], ev[j])
    return out


def blaschke(t, zeros, uni):
    """Finite Blaschke product uni * prod (t - a)/(1 - conj(a) t)."""
    cdef const double complex[::1] tv = np.ascontiguousarray(t, dtype=np.complex128)
    cdef const double complex[::1] av = np.ascontiguousarray(zeros, dtype=np.complex128)
    cdef Py_ssize_t n = tv.shape[0], m = av.shape[0], i, j
    cdef double complex u = uni
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex acc, a
    for i in range(n):
        acc = u
        for j in range(m):
            a = av[j]
            acc = acc * (tv[i] - a) / (1.0 - a.conjugate() * tv[i])
        ov[i] = acc
    return out


def mobius_scalar(zp, a, s):
    """The scalar factor s / (1 - <z', a>) for rows z' of an (N, k) array."""
    cdef const double complex[:, ::1] zv = np.ascontiguousarray(zp, dtype=np.complex128)
    cdef const double complex[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = zv.shape[0], k = zv.shape[1], i, j
    cdef double sv = s
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex acc
    for i in range(n):
        acc = 0.0 + 0.0j
        for j in range(k):
            acc = acc + zv[i, j] * av[j].conjugate()
        ov[i] = sv / (1.0 - acc)
    return out


def cpow(m, alpha):
    """Principal branch m ** alpha for a complex array and real alpha."""
    cdef const double complex[::1] mv = np.ascontiguousarray(m, dtype=np.complex128)
    cdef double al = alpha
    cdef Py_ssize_t n = mv.shape[0], i
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double re, im, r2, lr, th, mag, ang
    for i in range(n):
        re = mv[i].real
        im = mv[i].imag
        r2 = re * re + im * im
        if r2 == 0.0:
            ov[i] = 0.0
            continue
        lr = 0.5 * log(r2)
        th = atan2(im, re)
        mag = exp(al * lr)
        ang = al * th
        ov[i] = mag * cos(ang) + 1j * mag * sin(ang)
    return out
