"""Numpy implementations of the numeric kernels (fallback backend)."""

import numpy as np


def abs2p_sum(z, two_p):
    """Row sums of |z_ij|**two_p[j] for a complex (N, d) array.

    zero entries contribute 0 regardless of the (positive) exponent.
    """
    z = np.asarray(z, dtype=np.complex128)
    two_p = np.asarray(two_p, dtype=np.float64)
    return np.power(np.abs(z), two_p[np.newaxis, :]).sum(axis=1)


def pow_int(z, e):
    """Componentwise integer powers z_ij ** e[j] (e may be negative)."""
    z = np.asarray(z, dtype=np.complex128)
    e = np.asarray(e, dtype=np.int64)
    return z ** e[np.newaxis, :]


def blaschke(t, zeros, uni):
    """Finite Blaschke product uni * prod (t - a)/(1 - conj(a) t)."""
    t = np.asarray(t, dtype=np.complex128)
    out = np.full(t.shape, complex(uni), dtype=np.complex128)
    for a in zeros:
        a = complex(a)
        out *= (t - a) / (1.0 - np.conj(a) * t)
    return out


def mobius_scalar(zp, a, s):
    """The scalar factor s / (1 - <z', a>) for rows z' of an (N, k) array."""
    zp = np.asarray(zp, dtype=np.complex128)
    a = np.asarray(a, dtype=np.complex128)
    if zp.shape[1] == 0:
        return np.full(zp.shape[0], complex(s), dtype=np.complex128)
    return s / (1.0 - zp @ np.conj(a))


def cpow(m, alpha):
    """Principal branch m ** alpha for a complex array and real alpha."""
    m = np.asarray(m, dtype=np.complex128)
    return m ** float(alpha)
