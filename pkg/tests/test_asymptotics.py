"""Closed-form steepest-descent results and their identities."""

import cmath
import math

import numpy as np
import pytest

from hkbose import (DegenerateInput, ModelParams, exact_energy,
                    fga_closed_form, hk_phase_nnlo, hk_spectrum_lo,
                    hk_spectrum_no_theta, saddle_points, stirling_norm)
from hkbose.asymptotics import NNLO_PHASE_SLOPE, fga_abs2_limit


def test_saddle_points_values():
    sd = saddle_points(1.0)
    assert sd.x0 == 1.0
    assert sd.x1 == pytest.approx(-1j, abs=1e-15)
    assert sd.s_at_x0 == pytest.approx(-1 - 0.5j, abs=1e-15)
    assert sd.s_second_deriv_at_x0 == pytest.approx(-(1 - 1j), abs=1e-15)
    assert sd.f_at_x0 == pytest.approx(cmath.exp(0.5j) * cmath.sqrt(1 - 1j), abs=1e-14)
    assert sd.f_at_x1 == 0


def test_saddle_small_tau_limit():
    sd = saddle_points(1e-12)
    assert sd.s_second_deriv_at_x0 == pytest.approx(-1.0, abs=1e-10)


def test_saddle_degenerate():
    with pytest.raises(DegenerateInput):
        saddle_points(0.0)


def test_lo_spectrum_matches_exact():
    rng = np.random.default_rng(5)
    for _ in range(40):
        params = ModelParams(omega_e=float(rng.uniform(-2, 2)),
                             interaction=float(rng.uniform(-1, 1)))
        n = int(rng.integers(0, 60))
        assert hk_spectrum_lo(params, n) == exact_energy(params, n)


def test_lo_spectrum_value():
    assert hk_spectrum_lo(ModelParams(1.0, 0.05), 10) == pytest.approx(12.25)


def test_no_theta_spectrum():
    p = ModelParams(1.0, 0.0)
    assert hk_spectrum_no_theta(p, 0) == pytest.approx(0.5)
    assert hk_spectrum_no_theta(ModelParams(1.0, 0.05), 10) == pytest.approx(13.25)


def test_no_theta_error_is_nlo():
    rng = np.random.default_rng(6)
    for _ in range(40):
        params = ModelParams(omega_e=float(rng.uniform(-2, 2)),
                             interaction=float(rng.uniform(-1, 1)))
        n = int(rng.integers(0, 60))
        gap = hk_spectrum_no_theta(params, n) - exact_energy(params, n)
        expect = 0.5 * params.omega_e + params.interaction * n
        assert gap == pytest.approx(expect, abs=1e-10)


def test_nnlo_phase():
    assert hk_phase_nnlo(1, 2.0) == pytest.approx(0.25)
    assert NNLO_PHASE_SLOPE == 0.125
    for n in (5, 12, 40):
        tau = 0.37
        assert hk_phase_nnlo(n, tau) - 0.5 * n * (n - 1) * tau \
            == pytest.approx(0.125 * tau)
    with pytest.raises(ValueError):
        hk_phase_nnlo(0, 1.0)


def test_fga_closed_form_values():
    p = ModelParams(1.0, 1.0)
    # |.|^2 * sqrt(1 + (nUt)^2) = 1: the written closed form has a
    # square-root denominator
    val = fga_closed_form(p, 1, 1.0)
    assert abs(val) ** 2 * math.sqrt(2.0) == pytest.approx(1.0, abs=1e-12)
    assert abs(val) ** 2 == pytest.approx(fga_abs2_limit(1, 1.0, 1.0), abs=1e-12)
    assert fga_closed_form(p, 3, 0.0) == 1.0


def test_fga_closed_form_modulus_identity():
    rng = np.random.default_rng(7)
    for _ in range(50):
        params = ModelParams(omega_e=float(rng.uniform(-2, 2)),
                             interaction=float(rng.uniform(-1, 1)))
        n = int(rng.integers(0, 40))
        t = float(rng.uniform(-5, 5))
        x = n * params.interaction * t
        got = abs(fga_closed_form(params, n, t)) ** 2 * math.sqrt(1 + x * x)
        assert got == pytest.approx(1.0, abs=1e-12)


def test_fga_harmonic_phase_wrong_sign():
    # U = 0: phase rotates as (n - 1/2) omega_e t -- the ground state gets
    # a negative energy -omega_e/2
    p = ModelParams(1.3, 0.0)
    t = 2.1
    val = fga_closed_form(p, 0, t)
    assert val == pytest.approx(cmath.exp(0.5j * 1.3 * t), abs=1e-12)


def test_stirling_norm():
    assert stirling_norm(1) == pytest.approx(math.sqrt(2 * math.pi) / math.e, rel=1e-12)
    assert stirling_norm(100) == pytest.approx(1.0, abs=1e-3)
    vals = [stirling_norm(n) for n in range(1, 201)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert all(v < 1.0 for v in vals)
    with pytest.raises(ValueError):
        stirling_norm(0)
