import math

import pytest

from hkbose import ModelParams, PrecisionConfig


@pytest.fixture(scope="session")
def params():
    return ModelParams(omega_e=1.0, interaction=0.05)


@pytest.fixture(scope="session")
def fast_cfg():
    """Fast-path eligible (n <= 12): double precision with 1e-8 tolerance."""
    return PrecisionConfig(working_digits=30, rel_tol=1e-8, abs_tol=1e-14,
                           max_subdivisions=20000)


@pytest.fixture(scope="session")
def tight_cfg():
    """Forces the arbitrary-precision engine for every n."""
    return PrecisionConfig(working_digits=30, rel_tol=1e-11, abs_tol=1e-14,
                           max_subdivisions=40000)


@pytest.fixture(scope="session")
def fig4():
    """Wave-packet panel parameters: z_i = 2, omega_e = 1, U = 0.05,
    omega_e t = 5 * 2 pi."""
    return {
        "z_i": 2.0 + 0.0j,
        "params": ModelParams(omega_e=1.0, interaction=0.05),
        "t": 10.0 * math.pi,
        "n_cut": 40,
    }
