# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in `_ref` (same API, same math)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, lgamma, log, sin, sqrt

cnp.import_array()


def gn_integrand_batch(s, int n, double tau, double shift, bint with_sqrt):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef Py_ssize_t size = sv.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(size, dtype=np.complex128)
    cdef double lgn = lgamma(n + 1.0)
    cdef double si, log_env, phase, mag, fre, fim, y, r, wre, wim
    cdef Py_ssize_t i
    for i in range(size):
        si = sv[i]
        if n > 0:
            if si <= 0.0:
                out[i] = 0.0
                continue
            log_env = n * log(si) - si - lgn
        else:
            log_env = -si
        phase = tau * (0.5 * si * si - shift * si)
        mag = exp(log_env)
        fre = mag * cos(phase)
        fim = mag * sin(phase)
        if with_sqrt:
            # principal sqrt(1 + i y), y = -tau * s: Re > 0 always, and
            # Im = y / (2 Re) avoids the r - 1 cancellation at small y
            y = -tau * si
            r = sqrt(1.0 + y * y)
            wre = sqrt(0.5 * (r + 1.0))
            wim = y / (2.0 * wre)
            out[i] = (fre * wre - fim * wim) + 1j * (fre * wim + fim * wre)
        else:
            out[i] = fre + 1j * fim
    return out


def wigner_series_batch(coeffs, alpha_re, alpha_im):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] are = np.ascontiguousarray(alpha_re, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] aim = np.ascontiguousarray(alpha_im, dtype=np.float64)
    cdef Py_ssize_t n_states = c.shape[0]
    cdef Py_ssize_t npts = are.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.zeros(npts, dtype=np.float64)

    # point-independent dyad coefficients
    #   coef[k n + m] = (-1)^m sqrt(m!/(m+k)!) c_{m+k} conj(c_m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] coef_re = np.zeros(n_states * n_states)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] coef_im = np.zeros(n_states * n_states)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lg = np.empty(n_states)
    cdef Py_ssize_t k, m, i, idx
    cdef double rat, sgn
    cdef double complex cm, cmk
    for m in range(n_states):
        lg[m] = lgamma(m + 1.0)
    for k in range(n_states):
        for m in range(n_states - k):
            rat = exp(0.5 * (lg[m] - lg[m + k]))
            sgn = -1.0 if m % 2 else 1.0
            cmk = c[m + k]
            cm = c[m]
            idx = k * n_states + m
            coef_re[idx] = sgn * rat * (cmk.real * cm.real + cmk.imag * cm.imag)
            coef_im[idx] = sgn * rat * (cmk.imag * cm.real - cmk.real * cm.imag)

    cdef double a2, x, base, pk_re, pk_im, tc_re, tc_im, tmp
    cdef double l_prev, l_cur, l_next, acc, in_re, in_im
    for i in range(npts):
        a2 = are[i] * are[i] + aim[i] * aim[i]
        x = 4.0 * a2
        base = 2.0 * exp(-2.0 * a2)
        tc_re = 2.0 * are[i]
        tc_im = -2.0 * aim[i]
        pk_re = 1.0
        pk_im = 0.0
        acc = 0.0
        for k in range(n_states):
            if k > 0:
                tmp = pk_re * tc_re - pk_im * tc_im
                pk_im = pk_re * tc_im + pk_im * tc_re
                pk_re = tmp
            in_re = 0.0
            in_im = 0.0
            l_prev = 0.0
            l_cur = 1.0
            idx = k * n_states
            for m in range(n_states - k):
                if m == 1:
                    l_prev = l_cur
                    l_cur = 1.0 + k - x
                elif m >= 2:
                    l_next = ((2.0 * m - 1.0 + k - x) * l_cur
                              - (m - 1.0 + k) * l_prev) / m
                    l_prev = l_cur
                    l_cur = l_next
                in_re += coef_re[idx + m] * l_cur
                in_im += coef_im[idx + m] * l_cur
            if k == 0:
                acc += base * in_re
            else:
                acc += 2.0 * base * (pk_re * in_re - pk_im * in_im)
        w[i] = acc
    return w
