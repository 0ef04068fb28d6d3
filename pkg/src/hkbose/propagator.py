"""Occupation-basis matrix elements of the semiclassical propagator.

The angular phase-space integration collapses every variant onto one radial
family (s = |z0|^2, tau = U t):

    I(n, tau; c, sqrt?) = (1/n!) int_0^inf ds e^-s s^n [sqrt(1 - i tau s)]
                          exp[i tau (s^2/2 - c s)]

with the linear coefficient c and the presence of the stability square root
distinguishing the methods:

    HK            c = n - 1/2   sqrt yes   element = e^{-i n w t} g_n(Ut)
    FGA (theta)   c = n - 1     sqrt no    element = e^{-i (n-1/2) w t} * I
    FGA (theta=0) c = n         sqrt no    element = e^{-i n w t} * I
    HK, theta=0   c = n + 1/2   sqrt yes   element = e^{-i (n+1/2) w t} * I

The two FGA rows implement both readings of "unit prefactor": keeping the
zero-point phase correction while dropping only the stability factor
(the default), or dropping both.  The off-diagonal elements vanish by the
angular integration; `off_diagonal_check` verifies that on the full 2D
integral by Monte Carlo.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import gmpy2
import numpy as np

from . import kernels
from .model import ModelParams, exact_energy
from .quadrature import (IntegralResult, PrecisionConfig, adaptive_gk_big,
                         adaptive_gk_float, truncation_limit, use_fast_path,
                         _bits_for_digits, _initial_segments)


class Method(enum.Enum):
    EXACT = "exact"
    HK = "hk"
    FGA = "fga"
    HK_NO_THETA = "hk-no-theta"


@dataclass(frozen=True)
class PropagatorSample:
    n: int
    tau: float
    t: float
    value: complex
    method: Method
    error_estimate: float


# variant -> (shift offset added to n, with_sqrt)
_VARIANTS = {
    "hk": (-0.5, True),
    "fga": (-1.0, False),
    "fga0": (0.0, False),
    "hk0": (0.5, True),
}


def _radial_value(n, tau, variant, config):
    """Cached dispatch of the radial integral family."""
    return _radial_value_cached(int(n), float(tau), variant, config)


@lru_cache(maxsize=200_000)
def _radial_value_cached(n, tau, variant, config):
    offset, with_sqrt = _VARIANTS[variant]
    shift = n + offset
    s_max = truncation_limit(n, config)
    hint = abs(tau) * (0.5 * s_max * s_max + abs(shift) * s_max)
    segments = _initial_segments(s_max, hint, config.max_subdivisions)

    if use_fast_path(n, config):
        def f_batch(arr):
            return kernels.gn_integrand_batch(arr, n, tau, shift, with_sqrt)

        value, err, nsub, ok = adaptive_gk_float(
            f_batch, 0.0, s_max, config.rel_tol, config.abs_tol,
            config.max_subdivisions, segments)
    else:
        f_pair = _big_integrand(n, tau, shift, with_sqrt, config.working_digits)
        value, err, nsub, ok = adaptive_gk_big(
            f_pair, 0.0, s_max, config.working_digits, config.rel_tol,
            config.abs_tol, config.max_subdivisions, segments)

    if not ok:
        from .errors import NonConvergence
        raise NonConvergence(
            f"g-integral (n={n}, tau={tau}, variant={variant}) did not converge "
            f"after {nsub} subdivisions at working_digits={config.working_digits}",
            value=value, error_estimate=err, subdivisions=nsub)
    return IntegralResult(value=value, error_estimate=err,
                          subdivisions_used=nsub, converged=True)


def _big_integrand(n, tau, shift, with_sqrt, digits):
    """gmpy2 closure returning the integrand as an (re, im) mpfr pair."""
    bits = _bits_for_digits(digits)
    with gmpy2.context(precision=bits):
        tau_b = gmpy2.mpfr(tau)
        shift_b = gmpy2.mpfr(shift)
        lgn = gmpy2.lgamma(gmpy2.mpfr(n + 1))[0]
        half = gmpy2.mpfr("0.5")
        one = gmpy2.mpfr(1)

    def f(s):
        if n > 0:
            log_env = n * gmpy2.log(s) - s - lgn
        else:
            log_env = -s
        phase = tau_b * (half * s * s - shift_b * s)
        mag = gmpy2.exp(log_env)
        sn, cs = gmpy2.sin_cos(phase)
        fre = mag * cs
        fim = mag * sn
        if not with_sqrt:
            return fre, fim
        # principal sqrt(1 + i y), y = -tau s: Re > 0 always, and
        # Im = y / (2 Re) avoids the r - 1 cancellation at small y
        y = -tau_b * s
        r = gmpy2.sqrt(one + y * y)
        wre = gmpy2.sqrt(half * (r + one))
        wim = y / (2 * wre)
        return fre * wre - fim * wim, fre * wim + fim * wre

    return f


def g_n(n: int, tau: float, config: PrecisionConfig) -> IntegralResult:
    """Diagonal matrix element of the propagator stripped of the harmonic
    phase: g_n(tau) with tau = U t."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _radial_value(n, tau, "hk", config)


def g_n_fga(n: int, tau: float, config: PrecisionConfig,
            keep_theta: bool = True) -> IntegralResult:
    """The frozen-Gaussian counterpart of g_n (stability factor set to 1).

    keep_theta selects whether the zero-point phase correction survives.
    The two readings share the same semiclassical-limit modulus but differ
    at finite n, and their phases differ by the theta contribution."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _radial_value(n, tau, "fga" if keep_theta else "fga0", config)


def g_n_no_theta(n: int, tau: float, config: PrecisionConfig) -> IntegralResult:
    """HK with the phase correction removed (stability factor retained)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _radial_value(n, tau, "hk0", config)


def matrix_element(params: ModelParams, method: Method, n: int, t: float,
                   config: PrecisionConfig,
                   fga_keep_theta: bool = True) -> PropagatorSample:
    """Diagonal element <n| U_method(t) |n>."""
    if n < 0:
        raise ValueError("n must be >= 0")
    tau = params.interaction * t
    w = params.omega_e

    if method is Method.EXACT:
        value = cmath.exp(-1j * t * exact_energy(params, n))
        return PropagatorSample(n=n, tau=tau, t=t, value=value,
                                method=method, error_estimate=0.0)
    if method is Method.HK:
        g = _radial_value(n, tau, "hk", config)
        phase = cmath.exp(-1j * n * w * t)
    elif method is Method.FGA:
        if fga_keep_theta:
            g = _radial_value(n, tau, "fga", config)
            phase = cmath.exp(-1j * (n - 0.5) * w * t)
        else:
            g = _radial_value(n, tau, "fga0", config)
            phase = cmath.exp(-1j * n * w * t)
    elif method is Method.HK_NO_THETA:
        g = _radial_value(n, tau, "hk0", config)
        phase = cmath.exp(-1j * (n + 0.5) * w * t)
    else:
        raise ValueError(f"unsupported method {method}")

    return PropagatorSample(n=n, tau=tau, t=t, value=phase * g.value,
                            method=method, error_estimate=g.error_estimate)


@dataclass(frozen=True)
class OffDiagonalEstimate:
    """Monte-Carlo estimate of an off-diagonal element (exactly zero by the
    angular integration; the stderr makes the 3-sigma check concrete)."""

    value: complex
    stderr: float
    samples: int


def off_diagonal_check(params: ModelParams, n: int, n_prime: int, t: float,
                       samples: int = 10 ** 6, seed: int | None = None,
                       batch: int = 200_000) -> OffDiagonalEstimate:
    """Evaluate <n| U_HK(t) |n'> for n != n' from the full 2D phase-space
    integral by importance-sampled Monte Carlo (z0 ~ e^{-|z0|^2} / pi).
    """
    if n == n_prime:
        raise ValueError("off-diagonal check requires n != n_prime")
    if n < 0 or n_prime < 0:
        raise ValueError("n, n_prime must be >= 0")
    u = params.interaction
    rng = np.random.default_rng(seed)
    norm = math.exp(-0.5 * (math.lgamma(n + 1) + math.lgamma(n_prime + 1)))
    harmonic = cmath.exp(-1j * n * params.omega_e * t)

    total = 0.0 + 0.0j
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        z = rng.normal(0.0, math.sqrt(0.5), m) + 1j * rng.normal(0.0, math.sqrt(0.5), m)
        s = np.abs(z) ** 2
        w = np.sqrt(1.0 - 1j * u * t * s)
        w = w * np.exp(1j * u * t * (0.5 * s * s - (n - 0.5) * s))
        w = w * z ** n * np.conj(z) ** n_prime * norm
        total += w.sum()
        total_sq += float(np.sum(np.abs(w) ** 2))
        done += m

    mean = total / samples
    var = max(0.0, total_sq / samples - abs(mean) ** 2)
    stderr = math.sqrt(var / samples)
    return OffDiagonalEstimate(value=harmonic * mean, stderr=stderr,
                               samples=samples)
