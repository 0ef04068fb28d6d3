"""Engine-level checks: closed-form integrals, the precision-consistency
invariants, truncation invariance, and failure signaling."""

import cmath
import math

import gmpy2
import numpy as np
import pytest

from hkbose import NonConvergence, PrecisionConfig, integrate_radial
from hkbose.quadrature import choose_working_digits, truncation_limit


def test_config_validation():
    with pytest.raises(ValueError):
        PrecisionConfig(working_digits=12)
    with pytest.raises(ValueError):
        PrecisionConfig(rel_tol=-1.0)
    with pytest.raises(ValueError):
        PrecisionConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        # less than 10 digits of headroom over rel_tol
        PrecisionConfig(working_digits=16, rel_tol=1e-12)
    with pytest.raises(ValueError):
        PrecisionConfig(max_subdivisions=0)


def test_digits_policy():
    # target + 10 + ceil(3.5 n)
    assert choose_working_digits(30, 5.0, 5) == 120
    assert choose_working_digits(10, 1.0, 10) == 55
    assert choose_working_digits(0, 10.0, 10) == 20
    # the 16-digit clamp floor
    assert choose_working_digits(0, 1.0, 1) == 16
    with pytest.raises(ValueError):
        choose_working_digits(-1, 1.0, 5)


def test_policy_consistent_with_reported_precision_demand():
    # around 100 working digits for n ~ 30 at ~5 target digits
    assert choose_working_digits(30, 5.0, 5) >= 110


@pytest.mark.parametrize("n", [0, 3, 8, 20])
def test_normalized_gamma_integrand(n, fast_cfg, tight_cfg):
    cfg = fast_cfg if n <= 12 else tight_cfg
    lgn = math.lgamma(n + 1)

    def integrand(s):
        if isinstance(s, float):
            return math.exp(n * math.log(s) - s - lgn) if n else math.exp(-s)
        log_env = n * gmpy2.log(s) - s - lgn if n else -s
        return gmpy2.exp(log_env), gmpy2.mpfr(0)

    res = integrate_radial(integrand, n, cfg)
    assert res.converged
    assert abs(res.value - 1.0) < 10 * cfg.rel_tol


def test_plain_exponential(fast_cfg):
    res = integrate_radial(lambda s: math.exp(-s), 0, fast_cfg)
    assert abs(res.value - 1.0) < 1e-9


def test_oscillatory_closed_form(fast_cfg):
    # int_0^inf e^-s e^{i 50 s} ds = 1 / (1 - 50 i)
    res = integrate_radial(lambda s: cmath.exp((-1 + 50j) * s), 0, fast_cfg,
                           oscillation_hint=50 * 50.0)
    assert abs(res.value - 1 / (1 - 50j)) < 1e-10


def test_oscillatory_closed_form_big_path():
    cfg = PrecisionConfig(working_digits=40, rel_tol=1e-12, abs_tol=1e-16,
                          max_subdivisions=40000)

    def integrand(s):
        sn, cs = gmpy2.sin_cos(40 * s)
        e = gmpy2.exp(-s)
        return e * cs, e * sn

    res = integrate_radial(integrand, 0, cfg, oscillation_hint=40 * 50.0)
    assert abs(res.value - 1 / (1 - 40j)) < 1e-13


def test_converged_implies_error_within_tolerance(fast_cfg):
    res = integrate_radial(lambda s: math.exp(-s) * s ** 4 / 24.0, 4, fast_cfg)
    assert res.converged
    assert res.error_estimate <= max(fast_cfg.rel_tol * abs(res.value),
                                     fast_cfg.abs_tol)


def _gn_like(n, tau, digits, rel_tol, abs_tol=1e-16, max_subdivisions=40000):
    """A g_n-shaped oscillatory integrand evaluated on the big path."""
    cfg = PrecisionConfig(working_digits=digits, rel_tol=rel_tol,
                          abs_tol=abs_tol, max_subdivisions=max_subdivisions)
    lgn = math.lgamma(n + 1)
    shift = n - 0.5

    def integrand(s):
        log_env = n * gmpy2.log(s) - s - lgn
        ph = tau * (s * s / 2 - shift * s)
        mag = gmpy2.exp(log_env)
        sn, cs = gmpy2.sin_cos(ph)
        return mag * cs, mag * sn

    s_max = truncation_limit(n, cfg)
    hint = abs(tau) * (0.5 * s_max ** 2 + abs(shift) * s_max)
    return integrate_radial(integrand, n, cfg, oscillation_hint=hint), cfg


def test_doubling_digits_within_error_estimate():
    base, cfg = _gn_like(18, 0.35, digits=25, rel_tol=1e-12)
    deep, _ = _gn_like(18, 0.35, digits=50, rel_tol=1e-12)
    assert abs(base.value - deep.value) <= max(base.error_estimate, 1e-15)


def test_halving_rel_tol_consistent():
    coarse, _ = _gn_like(18, 0.35, digits=30, rel_tol=1e-9)
    fine, _ = _gn_like(18, 0.35, digits=30, rel_tol=5e-10)
    assert abs(coarse.value - fine.value) <= max(coarse.error_estimate, 1e-15)


def test_truncation_margin_invariance():
    wide, cfg = _gn_like(6, 0.8, digits=25, rel_tol=1e-12, abs_tol=1e-14)
    wider, _ = _gn_like(6, 0.8, digits=25, rel_tol=1e-12, abs_tol=1e-14,
                        max_subdivisions=40000)
    cfg10 = PrecisionConfig(working_digits=25, rel_tol=1e-12, abs_tol=1e-14,
                            max_subdivisions=40000, truncation_margin=10.0)
    assert truncation_limit(6, cfg10) >= truncation_limit(6, cfg)
    lgn = math.lgamma(7)

    def integrand(s):
        log_env = 6 * gmpy2.log(s) - s - lgn
        ph = 0.8 * (s * s / 2 - 5.5 * s)
        mag = gmpy2.exp(log_env)
        sn, cs = gmpy2.sin_cos(ph)
        return mag * cs, mag * sn

    res10 = integrate_radial(integrand, 6, cfg10,
                             oscillation_hint=0.8 * truncation_limit(6, cfg10) ** 2)
    assert abs(res10.value - wide.value) < cfg.abs_tol


def test_truncation_limit_envelope_bound():
    cfg = PrecisionConfig()
    for n in (0, 5, 30):
        s_max = truncation_limit(n, cfg)
        log_env = n * math.log(s_max) - s_max - math.lgamma(n + 1)
        assert log_env < math.log(cfg.abs_tol) - cfg.truncation_margin * math.log(10)
        assert s_max >= n + 40


def test_nonconvergence_raises():
    cfg = PrecisionConfig(working_digits=30, rel_tol=1e-11, abs_tol=1e-16,
                          max_subdivisions=3)

    def nasty(s):
        sn, cs = gmpy2.sin_cos(300 * s)
        e = gmpy2.exp(-s)
        return e * cs, e * sn

    with pytest.raises(NonConvergence) as info:
        integrate_radial(nasty, 0, cfg)
    assert info.value.subdivisions is not None


def test_fast_path_boundary(fast_cfg, tight_cfg):
    from hkbose.quadrature import use_fast_path
    assert use_fast_path(12, fast_cfg)
    assert not use_fast_path(13, fast_cfg)
    assert not use_fast_path(5, tight_cfg)  # rel_tol below the 1e-8 gate
