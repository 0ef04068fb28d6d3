"""Phase curves, slope fits, plateau estimates."""

import math

import numpy as np
import pytest

from hkbose import (InsufficientData, PhaseCurve, PrecisionConfig,
                    build_phase_curve, estimate_plateau, fit_delta_phi_slope)
from hkbose.analysis import default_scaled_window, steps_for_unwrap


def _synthetic_curve(n=7, slope=0.125, steps=120, tau_max=1.0):
    tau = np.linspace(0.0, tau_max, steps + 1)
    phase = 0.5 * n * (n - 1) * tau + slope * tau
    vals = np.exp(-1j * phase)
    return PhaseCurve(n=n, tau_grid=tau, values=vals,
                      modulus_sq=np.abs(vals) ** 2, phase=phase,
                      delta_phi=phase - 0.5 * n * (n - 1) * tau)


def test_build_curve_low_n(fast_cfg):
    curve = build_phase_curve(2, 1.0, 64, fast_cfg)
    assert curve.phase[0] == 0.0
    assert np.all(np.abs(np.diff(curve.phase)) < math.pi)
    assert np.all(curve.modulus_sq <= 1.05)
    assert np.all(curve.modulus_sq >= 0.0)
    # reconstruction consistency: |g| e^{-i phi} reproduces the samples
    recon = np.sqrt(curve.modulus_sq) * np.exp(-1j * curve.phase)
    assert np.max(np.abs(recon - curve.values)) < 1e-10


def test_delta_phi_definition(fast_cfg):
    curve = build_phase_curve(3, 0.8, 64, fast_cfg)
    expect = curve.phase - 0.5 * 3 * 2 * curve.tau_grid
    assert np.allclose(curve.delta_phi, expect)


def test_auto_refinement_kicks_in(fast_cfg):
    # 8 steps cannot resolve n=6's phase rate ~ 15 rad per unit tau;
    # refinement must still deliver a pi-safe grid
    curve = build_phase_curve(6, 2.0, 8, fast_cfg)
    assert len(curve.tau_grid) > 9
    assert np.all(np.abs(np.diff(curve.phase)) < math.pi)


def test_modulus_monotone_decay_n0(fast_cfg):
    curve = build_phase_curve(0, 5.0, 100, fast_cfg)
    diffs = np.diff(curve.modulus_sq)
    assert np.all(diffs < 1e-6)


def test_grid_refinement_stability(fast_cfg):
    """Doubling the grid changes the fitted slope by less than its stderr."""
    window = (0.2, 1.0)
    c1 = build_phase_curve(5, 1.0, 128, fast_cfg)
    c2 = build_phase_curve(5, 1.0, 256, fast_cfg)
    s1, e1 = fit_delta_phi_slope(c1, window)
    s2, _ = fit_delta_phi_slope(c2, window)
    assert abs(s1 - s2) <= max(e1, 1e-9)


def test_synthetic_slope_exact():
    slope, stderr = fit_delta_phi_slope(_synthetic_curve(), (0.0, 1.0))
    assert slope == pytest.approx(0.125, abs=1e-12)
    assert stderr < 1e-12


def test_slope_insufficient_data():
    with pytest.raises(InsufficientData):
        fit_delta_phi_slope(_synthetic_curve(steps=30), (0.0, 0.2))


def test_plateau_harmonic_trivial():
    # tau identically swept but with U effectively zero: modulus 1, spread 0
    tau = np.linspace(0.0, 1.0, 40)
    vals = np.ones_like(tau, dtype=complex)
    curve = PhaseCurve(n=4, tau_grid=tau, values=vals,
                       modulus_sq=np.ones_like(tau), phase=np.zeros_like(tau),
                       delta_phi=np.zeros_like(tau))
    est = estimate_plateau(curve, (0.2, 0.9))
    assert est.r_n == 1.0
    assert est.spread == 0.0


def test_plateau_no_stabilization_at_n0(fast_cfg):
    curve = build_phase_curve(0, 5.0, 60, fast_cfg)
    est = estimate_plateau(curve, (1.0, 5.0))
    assert est.spread > 0.1  # keeps decaying: no plateau


def test_plateau_insufficient_data():
    with pytest.raises(InsufficientData):
        estimate_plateau(_synthetic_curve(steps=10), (0.91, 0.99))


def test_scaled_window():
    assert default_scaled_window(10) == (0.1, 0.5)
    assert default_scaled_window(25, 2.0, 10.0) == (0.08, 0.4)
    with pytest.raises(ValueError):
        default_scaled_window(0)


def test_steps_for_unwrap_scales():
    assert steps_for_unwrap(30, 1.0 / 3.0) >= 150
    assert steps_for_unwrap(1, 1.0) >= 16


def test_unwrap_failure_surfaces():
    """A pathologically low refinement ceiling cannot mask aliasing."""
    from hkbose import UnwrapFailure
    import hkbose.analysis as analysis
    old = analysis._REFINE_LIMIT
    analysis._REFINE_LIMIT = 0
    try:
        with pytest.raises(UnwrapFailure):
            build_phase_curve(9, 4.0, 2, PrecisionConfig(
                working_digits=30, rel_tol=1e-8, abs_tol=1e-14,
                max_subdivisions=20000))
    finally:
        analysis._REFINE_LIMIT = old
