"""Turns sampled g_n values into derived observables: continuous phase
curves, their residue against the exact anharmonic phase, fitted residue
slopes, and modulus plateau estimates.

The sign convention is g = |g| e^{-i phi}, so positive phi corresponds to
positive energy; the residue is delta_phi(tau) = phi(tau) - n(n-1) tau / 2.
Curves depend only on tau = U t (the harmonic prefactor is exact and drops
out), so no model parameters enter here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientData, UnwrapFailure
from .propagator import g_n
from .quadrature import PrecisionConfig

_REFINE_LIMIT = 6
_UNWRAP_SAFETY = 0.9 * math.pi


@dataclass(frozen=True)
class PhaseCurve:
    """g_n on an ascending tau grid in continuous polar form."""

    n: int
    tau_grid: np.ndarray
    values: np.ndarray      # complex g_n samples
    modulus_sq: np.ndarray  # |g_n|^2
    phase: np.ndarray       # unwrapped, phase[0] = 0 at tau = 0
    delta_phi: np.ndarray   # phase - n(n-1) tau / 2


@dataclass(frozen=True)
class PlateauEstimate:
    n: int
    r_n: float
    window: tuple[float, float]
    spread: float


def build_phase_curve(n: int, tau_max: float, steps: int,
                      config: PrecisionConfig,
                      variant: str = "hk") -> PhaseCurve:
    """Sample g_n on [0, tau_max] and unwrap its phase by nearest-branch
    continuation from phi(0) = 0.

    An unwrap is only trusted if (a) every increment stays safely below pi
    and (b) one grid doubling reproduces the same branch choices at the
    shared points -- a single grid cannot distinguish a slow phase from an
    aliased fast one.  The grid doubles (up to 6 times) until both hold;
    UnwrapFailure if the refinement budget runs out.  Cached integrals make
    the shared abscissas of successive refinements free.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if tau_max <= 0:
        raise ValueError("tau_max must be positive")

    from .propagator import g_n_fga, g_n_no_theta
    sample = {
        "hk": g_n,
        "fga": lambda nn, tt, cc: g_n_fga(nn, tt, cc, keep_theta=True),
        "fga0": lambda nn, tt, cc: g_n_fga(nn, tt, cc, keep_theta=False),
        "hk0": g_n_no_theta,
    }[variant]

    def unwrap_on(m):
        # i/m reproduces coarser abscissas exactly, so the cache is reused
        tau = np.array([tau_max * (i / m) for i in range(m + 1)])
        vals = np.array([sample(n, float(tv), config).value for tv in tau])
        raw = np.array([-cmath.phase(v) for v in vals])
        phase = np.unwrap(raw)
        return tau, vals, phase - phase[0]

    tau, vals, phase = unwrap_on(steps)
    for attempt in range(_REFINE_LIMIT):
        tau2, vals2, phase2 = unwrap_on(2 * steps)
        stable = (np.max(np.abs(phase2[::2] - phase)) < 0.5 * math.pi
                  and np.max(np.abs(np.diff(phase2))) < _UNWRAP_SAFETY)
        steps *= 2
        tau, vals, phase = tau2, vals2, phase2
        if stable:
            delta = phase - 0.5 * n * (n - 1) * tau
            return PhaseCurve(n=n, tau_grid=tau, values=vals,
                              modulus_sq=np.abs(vals) ** 2,
                              phase=phase, delta_phi=delta)
    raise UnwrapFailure(
        f"phase unwrap for n={n} not stable under refinement after "
        f"{_REFINE_LIMIT} grid doublings (final steps={steps})")


def fit_delta_phi_slope(curve: PhaseCurve,
                        window: tuple[float, float]) -> tuple[float, float]:
    """Least-squares slope of delta_phi vs tau on the window (affine model,
    intercept included).  Returns (slope, stderr)."""
    lo, hi = window
    mask = (curve.tau_grid >= lo) & (curve.tau_grid <= hi)
    m = int(np.count_nonzero(mask))
    if m < 10:
        raise InsufficientData(
            f"slope fit needs >= 10 samples in the window, got {m}")
    x = curve.tau_grid[mask]
    y = curve.delta_phi[mask]
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    sigma_sq = float(resid @ resid) / (m - 2)
    sxx = float(np.sum((x - x.mean()) ** 2))
    return float(coef[1]), math.sqrt(sigma_sq / sxx)


def estimate_plateau(curve: PhaseCurve,
                     window: tuple[float, float]) -> PlateauEstimate:
    """Mean of |g_n| over the window; the spread (max - min) flags whether
    the value has actually stabilized."""
    lo, hi = window
    mask = (curve.tau_grid >= lo) & (curve.tau_grid <= hi)
    m = int(np.count_nonzero(mask))
    if m < 3:
        raise InsufficientData(
            f"plateau estimate needs >= 3 samples in the window, got {m}")
    mod = np.sqrt(curve.modulus_sq[mask])
    return PlateauEstimate(n=curve.n, r_n=float(mod.mean()),
                           window=(lo, hi),
                           spread=float(mod.max() - mod.min()))


def default_scaled_window(n: int, lo_tilde: float = 1.0,
                          hi_tilde: float = 5.0) -> tuple[float, float]:
    """Window in tau for a given n from the n-independent scaled variable
    tau_tilde = n tau (the transient collapses in this variable)."""
    if n < 1:
        raise ValueError("scaled windows need n >= 1")
    return lo_tilde / n, hi_tilde / n


def steps_for_unwrap(n: int, tau_max: float, per_period: float = 4.0) -> int:
    """Grid size keeping unwrapped increments safely below pi, from the
    anharmonic phase rate n(n-1)/2 + 1/8."""
    rate = 0.5 * n * max(n - 1, 1) + 0.125
    return max(16, int(math.ceil(per_period * rate * tau_max / math.pi)))
