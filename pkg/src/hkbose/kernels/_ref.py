"""Pure-numpy reference implementations of the hot kernels.

API-identical to the compiled extension `_core`; used as the fallback when
the extension is unavailable and as the ground truth the extension is tested
against.
"""

from __future__ import annotations

import math

import numpy as np


def gn_integrand_batch(s, n, tau, shift, with_sqrt):
    """Radial propagator integrand, folded against overflow.

    exp(n ln s - s - ln n!) * [sqrt(1 - i tau s)] * exp(i tau (s^2/2 - shift s))
    evaluated on a batch of abscissas.
    """
    s = np.asarray(s, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        if n > 0:
            log_env = n * np.log(s) - s - math.lgamma(n + 1)
        else:
            log_env = -s
        out = np.exp(log_env + 1j * tau * (0.5 * s * s - shift * s))
    if with_sqrt:
        out = out * np.sqrt(1.0 - 1j * tau * s)
    return out


def _sqrt_fact_ratios(n_states):
    """ratios[k, m] = sqrt(m! / (m+k)!) for m + k < n_states."""
    lg = np.array([math.lgamma(m + 1) for m in range(n_states)])
    out = np.zeros((n_states, n_states))
    for k in range(n_states):
        m_max = n_states - k
        out[k, :m_max] = np.exp(0.5 * (lg[:m_max] - lg[k:k + m_max]))
    return out


def wigner_series_batch(coeffs, alpha_re, alpha_im):
    """Wigner function of the pure state sum_n c_n |n> on a batch of
    phase-space points, via the number-dyad Laguerre closed form.

    W = 2 e^{-2|a|^2} [ sum_m (-1)^m |c_m|^2 L_m(4|a|^2)
        + sum_{k>=1} 2 Re{ (2 a*)^k sum_m (-1)^m sqrt(m!/(m+k)!)
                            c_{m+k} c_m^* L_m^k(4|a|^2) } ]
    """
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    are = np.asarray(alpha_re, dtype=np.float64)
    aim = np.asarray(alpha_im, dtype=np.float64)
    n_states = c.size

    a2 = are * are + aim * aim
    x = 4.0 * a2
    base = 2.0 * np.exp(-2.0 * a2)
    ratios = _sqrt_fact_ratios(n_states)

    w = np.zeros_like(a2)
    two_conj = 2.0 * (are - 1j * aim)
    pk = np.ones_like(a2, dtype=np.complex128)
    for k in range(n_states):
        if k > 0:
            pk = pk * two_conj
        inner = np.zeros_like(a2, dtype=np.complex128)
        l_prev = np.zeros_like(x)
        l_cur = np.ones_like(x)  # L_0^k
        for m in range(n_states - k):
            if m == 1:
                l_prev, l_cur = l_cur, (1.0 + k - x)
            elif m >= 2:
                l_prev, l_cur = l_cur, ((2.0 * m - 1.0 + k - x) * l_cur
                                        - (m - 1.0 + k) * l_prev) / m
            cc = c[m + k] * np.conj(c[m]) * ratios[k, m]
            if m % 2:
                cc = -cc
            inner = inner + cc * l_cur
        if k == 0:
            w += base * inner.real
        else:
            w += 2.0 * base * (pk * inner).real
    return w
