# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Same signatures as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, fmod, atan2, M_PI

cnp.import_array()


def nudft(double[::1] theta, double complex[::1] weighted, long n_min, long n_max):
    """Return sum_k weighted[k] * exp(-i n theta[k]) for n = n_min..n_max."""
    cdef Py_ssize_t K = theta.shape[0]
    cdef Py_ssize_t L = n_max - n_min + 1
    cdef Py_ssize_t k, j
    out_arr = np.zeros(L, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex cur, step
    cdef double a
    with nogil:
        for k in range(K):
            a = -n_min * theta[k]
            cur = weighted[k] * (cos(a) + 1j * sin(a))
            step = cos(theta[k]) - 1j * sin(theta[k])
            for j in range(L):
                out[j] = out[j] + cur
                cur = cur * step
                # re-anchor periodically to bound recurrence drift
                if (j & 127) == 127:
                    a = -(n_min + j + 1) * theta[k]
                    cur = weighted[k] * (cos(a) + 1j * sin(a))
    return out_arr


def phase_walk(double complex[::1] values):
    """Accumulated phase along a closed sample path and the largest increment."""
    cdef Py_ssize_t K = values.shape[0]
    cdef Py_ssize_t k
    cdef double total = 0.0, biggest = 0.0, d, re, im
    cdef double complex a, b
    with nogil:
        for k in range(K):
            a = values[k]
            b = values[k + 1] if k + 1 < K else values[0]
            # arg(b / a) = arg(b * conj(a))
            re = b.real * a.real + b.imag * a.imag
            im = b.imag * a.real - b.real * a.imag
            d = atan2(im, re)
            total += d
            if d < 0:
                d = -d
            if d > biggest:
                biggest = d
    return total, biggest


def jump_product(double[::1] theta, double[::1] locations, double complex[::1] betas):
    """prod_r exp(i beta_r (((theta - theta_r) mod 2pi) - pi))."""
    cdef Py_ssize_t K = theta.shape[0]
    cdef Py_ssize_t R = locations.shape[0]
    cdef Py_ssize_t k, r
    cdef double two_pi = 2.0 * M_PI
    cdef double u
    cdef double complex acc
    out_arr = np.empty(K, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    with nogil:
        for k in range(K):
            acc = 0
            for r in range(R):
                u = fmod(theta[k] - locations[r], two_pi)
                if u < 0:
                    u = u + two_pi
                acc = acc + 1j * betas[r] * (u - M_PI)
            out[k] = acc
    return np.exp(out_arr)
