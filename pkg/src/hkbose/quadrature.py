"""Configurable-precision adaptive quadrature for decaying oscillatory
radial integrands.

Two engines share the same (G7, K15) embedded pair and the same globally
adaptive bisection strategy:

  * a float64 engine operating on numpy batches of nodes (the fast path for
    small decay scales, where double precision is still adequate), and
  * an arbitrary-precision engine built on gmpy2/MPFR real pairs, which is
    what defeats the oscillatory sign problem at large n.

The integrands handled here decay like exp(-s) s^n, so the infinite radial
domain is truncated at an s_max where that envelope (divided by n!) has
dropped below abs_tol * 10**-truncation_margin.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import gmpy2
import numpy as np

from .errors import NonConvergence
from .gkrule import gauss_kronrod_15

_FAST_PATH_MAX_N = 12
_FAST_PATH_MIN_RELTOL = 1e-8

# decimal digits -> bits, with guard
_LOG2_10 = math.log2(10.0)


def _bits_for_digits(digits: int) -> int:
    return int(math.ceil(digits * _LOG2_10)) + 16


@dataclass(frozen=True)
class PrecisionConfig:
    """Accuracy contract for the oscillatory quadrature.

    working_digits must leave at least 10 decimal digits of headroom over
    the requested relative tolerance; 16 is the floor (double precision).
    """

    working_digits: int = 30
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 4000
    truncation_margin: float = 5.0

    def __post_init__(self):
        if self.working_digits < 16:
            raise ValueError(f"working_digits must be >= 16, got {self.working_digits}")
        if not (self.rel_tol > 0.0):
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if not (self.abs_tol > 0.0):
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.working_digits < -math.log10(self.rel_tol) + 10:
            raise ValueError(
                f"working_digits={self.working_digits} leaves less than 10 digits of "
                f"headroom over rel_tol={self.rel_tol}"
            )
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class IntegralResult:
    value: complex
    error_estimate: float
    subdivisions_used: int
    converged: bool


def choose_working_digits(n: int, tau_max: float, target_digits: int) -> int:
    """Recommend a working precision for g_n-type integrals.

    The oscillatory cancellation deepens roughly linearly in n, so the
    default policy is target + 10 + ceil(3.5 n), floored at 16.  tau_max is
    accepted for interface stability but does not enter the default policy
    (the subdivision count, not the precision, absorbs growth in tau).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return max(16, target_digits + 10 + math.ceil(3.5 * n))


def truncation_limit(decay_scale: float, config: PrecisionConfig) -> float:
    """Upper integration limit for an integrand bounded by e^-s s^n / n!.

    Starts from n + 40 + 10 sqrt(n+1) and extends until the envelope is
    below abs_tol * 10**-truncation_margin.
    """
    n = max(0.0, float(decay_scale))
    s_max = n + 40.0 + 10.0 * math.sqrt(n + 1.0)
    log_bound = math.log(config.abs_tol) - config.truncation_margin * math.log(10.0)
    lgn = math.lgamma(n + 1.0)

    def log_envelope(s: float) -> float:
        return n * math.log(s) - s - lgn

    while log_envelope(s_max) > log_bound and s_max < n + 1e6:
        s_max += 5.0
    return s_max


def use_fast_path(decay_scale: float, config: PrecisionConfig) -> bool:
    return decay_scale <= _FAST_PATH_MAX_N and config.rel_tol >= _FAST_PATH_MIN_RELTOL


# ---------------------------------------------------------------------------
# float64 engine


_F64_RULE = None


def _f64_rule():
    global _F64_RULE
    if _F64_RULE is None:
        _F64_RULE = gauss_kronrod_15(30).as_float64()
    return _F64_RULE


def adaptive_gk_float(f_batch, a, b, rel_tol, abs_tol, max_subdivisions,
                      initial_segments=8):
    """Globally adaptive G7/K15 quadrature in double precision.

    f_batch maps a numpy array of abscissas to complex integrand values.
    Returns (value, error_estimate, subdivisions, converged).
    """
    xs, wk, wg = _f64_rule()
    nseg = max(1, min(initial_segments, max_subdivisions))
    edges = np.linspace(a, b, nseg + 1)

    def eval_intervals(bounds):
        # bounds: list of (lo, hi); one batched integrand call for all nodes
        nodes = np.concatenate(
            [0.5 * (hi + lo) + 0.5 * (hi - lo) * xs for lo, hi in bounds])
        fv = f_batch(nodes).reshape(len(bounds), xs.size)
        out = []
        for (lo, hi), row in zip(bounds, fv):
            half = 0.5 * (hi - lo)
            K = half * np.dot(wk, row)
            G = half * np.dot(wg, row)
            out.append((lo, hi, K, abs(K - G)))
        return out

    heap = []
    total = 0.0 + 0.0j
    total_err = 0.0
    for lo, hi, K, err in eval_intervals(list(zip(edges[:-1], edges[1:]))):
        heapq.heappush(heap, (-err, lo, hi, K))
        total += K
        total_err += err

    nsub = 0
    while total_err > max(rel_tol * abs(total), abs_tol):
        if nsub >= max_subdivisions:
            return complex(total), float(total_err), nsub, False
        neg_err, lo, hi, K = heapq.heappop(heap)
        total -= K
        total_err += neg_err  # neg_err = -err
        mid = 0.5 * (lo + hi)
        for clo, chi, cK, cerr in eval_intervals([(lo, mid), (mid, hi)]):
            heapq.heappush(heap, (-cerr, clo, chi, cK))
            total += cK
            total_err += cerr
        nsub += 1
        if nsub % 64 == 0:
            # resum to shed accumulated cancellation in the running totals
            total = sum(item[3] for item in heap)
            total_err = -sum(item[0] for item in heap)

    total = sum(item[3] for item in heap)
    total_err = -sum(item[0] for item in heap)
    converged = total_err <= max(rel_tol * abs(total), abs_tol)
    return complex(total), float(total_err), nsub, converged


# ---------------------------------------------------------------------------
# arbitrary-precision engine (gmpy2 real pairs)


_MPFR_RULE_CACHE: dict[int, tuple] = {}


def _mpfr_rule(digits: int):
    key = digits
    cached = _MPFR_RULE_CACHE.get(key)
    if cached is None:
        cached = gauss_kronrod_15(digits).as_mpfr(_bits_for_digits(digits))
        _MPFR_RULE_CACHE[key] = cached
    return cached


def adaptive_gk_big(f_pair, a, b, digits, rel_tol, abs_tol, max_subdivisions,
                    initial_segments=8):
    """Globally adaptive G7/K15 quadrature in `digits`-decimal arithmetic.

    f_pair maps an mpfr abscissa to an (re, im) mpfr pair.  All quadrature
    sums are carried in MPFR; only the returned value/error are rounded to
    double.
    """
    xs, wk, wg = _mpfr_rule(digits)
    bits = _bits_for_digits(digits)
    with gmpy2.context(precision=bits):
        lo0 = gmpy2.mpfr(a)
        hi0 = gmpy2.mpfr(b)
        half_one = gmpy2.mpfr("0.5")

        def eval_interval(lo, hi):
            mid = half_one * (lo + hi)
            half = half_one * (hi - lo)
            kre = gmpy2.mpfr(0)
            kim = gmpy2.mpfr(0)
            gre = gmpy2.mpfr(0)
            gim = gmpy2.mpfr(0)
            for x, wki, wgi in zip(xs, wk, wg):
                s = mid + half * x
                fre, fim = f_pair(s)
                kre += wki * fre
                kim += wki * fim
                if wgi:
                    gre += wgi * fre
                    gim += wgi * fim
            kre *= half
            kim *= half
            gre *= half
            gim *= half
            err = gmpy2.sqrt((kre - gre) ** 2 + (kim - gim) ** 2)
            return kre, kim, err

        nseg = max(1, min(initial_segments, max_subdivisions))
        heap = []
        counter = 0
        step = (hi0 - lo0) / nseg
        for i in range(nseg):
            lo = lo0 + i * step
            hi = lo0 + (i + 1) * step if i < nseg - 1 else hi0
            kre, kim, err = eval_interval(lo, hi)
            heapq.heappush(heap, (-float(err), counter, lo, hi, kre, kim, err))
            counter += 1

        def totals():
            tre = gmpy2.mpfr(0)
            tim = gmpy2.mpfr(0)
            terr = gmpy2.mpfr(0)
            for _, _, _, _, kre, kim, err in heap:
                tre += kre
                tim += kim
                terr += err
            return tre, tim, terr

        nsub = 0
        while True:
            tre, tim, terr = totals()
            mag = gmpy2.sqrt(tre * tre + tim * tim)
            if terr <= max(rel_tol * mag, gmpy2.mpfr(abs_tol)):
                value = complex(float(tre), float(tim))
                return value, float(terr), nsub, True
            if nsub >= max_subdivisions:
                value = complex(float(tre), float(tim))
                return value, float(terr), nsub, False
            _, _, lo, hi, _, _, _ = heapq.heappop(heap)
            mid = half_one * (lo + hi)
            for clo, chi in ((lo, mid), (mid, hi)):
                kre, kim, err = eval_interval(clo, chi)
                heapq.heappush(heap, (-float(err), counter, clo, chi, kre, kim, err))
                counter += 1
            nsub += 1


# ---------------------------------------------------------------------------
# public entry point


def integrate_radial(integrand, decay_scale, config: PrecisionConfig,
                     oscillation_hint=None):
    """Integrate a decaying (possibly highly oscillatory) integrand on
    [0, s_max], where s_max comes from the envelope truncation policy.

    `integrand` is called with a single positive abscissa; on the fast path
    it receives floats, otherwise gmpy2.mpfr values.  `oscillation_hint`,
    when given, is the total phase swept across the domain in radians and
    seeds the initial partition so that no starting interval hides whole
    oscillation periods from the error estimator.

    Raises NonConvergence when the subdivision budget runs out -- the signal
    that working_digits or max_subdivisions is too low for this (n, tau).
    """
    s_max = truncation_limit(decay_scale, config)
    segments = _initial_segments(s_max, oscillation_hint, config.max_subdivisions)

    if use_fast_path(decay_scale, config):
        def f_batch(arr):
            return np.array([complex(integrand(float(s))) for s in arr])

        value, err, nsub, ok = adaptive_gk_float(
            f_batch, 0.0, s_max, config.rel_tol, config.abs_tol,
            config.max_subdivisions, segments)
    else:
        def f_pair(s):
            v = integrand(s)
            if isinstance(v, tuple):
                return v
            c = complex(v)
            return gmpy2.mpfr(c.real), gmpy2.mpfr(c.imag)

        value, err, nsub, ok = adaptive_gk_big(
            f_pair, 0.0, s_max, config.working_digits, config.rel_tol,
            config.abs_tol, config.max_subdivisions, segments)

    if not ok:
        raise NonConvergence(
            f"quadrature did not converge after {nsub} subdivisions "
            f"(error {err:.3e}, working_digits={config.working_digits})",
            value=value, error_estimate=err, subdivisions=nsub)
    return IntegralResult(value=value, error_estimate=err,
                          subdivisions_used=nsub, converged=True)


def _initial_segments(s_max, oscillation_hint, max_subdivisions):
    base = max(8, int(math.ceil(s_max / 10.0)))
    if oscillation_hint is not None:
        # about two oscillation periods per starting interval
        base = max(base, int(math.ceil(abs(oscillation_hint) / (4.0 * math.pi))))
    return min(base, max(1, max_subdivisions // 2))
