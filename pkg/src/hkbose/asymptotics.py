"""Steepest-descent results for the radial integral in the large-n limit
(n -> infinity at fixed tau_tilde = n tau).

After the substitution s = n x the integral takes the Laplace form
f(x) exp[n S(x)] with

    S(x) = ln x - x + i tau_tilde (x^2/2 - x)
    f(x) = e^{i tau_tilde x / 2} sqrt(1 - i tau_tilde x)

S has critical points x0 = 1 and x1 = 1/(i tau_tilde); f vanishes at x1, so
only the dominant saddle contributes.  The leading order reproduces the
exact spectrum; retaining the next-order linear phase of f shifts the saddle
to x0 = 1 - 1/2n (valid for tau_tilde >> 1) and produces the tau/8 phase
residue seen in quadrature.  Dropping the phase correction or the stability
factor instead damages the spectrum at next-to-leading order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateInput
from .model import ModelParams

#: slope of the phase residue delta-phi(tau), from the shifted-saddle result
NNLO_PHASE_SLOPE = 0.125


@dataclass(frozen=True)
class SaddleData:
    """Critical-point data of the rescaled radial integrand."""

    x0: complex
    x1: complex
    f_at_x0: complex
    s_at_x0: complex
    s_second_deriv_at_x0: complex

    @property
    def f_at_x1(self) -> complex:
        """The suppressed saddle carries no weight: f(x1) = 0 identically."""
        return 0.0 + 0.0j


def saddle_points(tau_tilde: float) -> SaddleData:
    """Both critical points and the dominant-saddle ingredients.

    Undefined at tau_tilde = 0, where the suppressed saddle escapes to
    infinity and the integral is the plain Gamma normalization anyway.
    """
    if tau_tilde == 0.0:
        raise DegenerateInput("saddle data undefined at tau_tilde = 0; "
                              "use the exact Gamma value instead")
    tt = tau_tilde
    return SaddleData(
        x0=1.0 + 0.0j,
        x1=1.0 / (1j * tt),
        f_at_x0=cmath.exp(0.5j * tt) * cmath.sqrt(1.0 - 1j * tt),
        s_at_x0=-(1.0 + 0.5j * tt),
        s_second_deriv_at_x0=-(1.0 - 1j * tt),
    )


def hk_spectrum_lo(params: ModelParams, n: int) -> float:
    """Leading-order semiclassical spectrum: omega_e n + (U/2) n (n-1),
    identical to the exact eigenvalues."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return params.omega_e * n + 0.5 * params.interaction * n * (n - 1)


def hk_spectrum_no_theta(params: ModelParams, n: int) -> float:
    """Spectrum with the phase correction dropped:
    omega_e (n + 1/2) + (U/2) n (n+1) -- a spurious zero-point energy and a
    wrong linear-in-n term in the anharmonic part."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return params.omega_e * (n + 0.5) + 0.5 * params.interaction * n * (n + 1)


def hk_phase_nnlo(n: int, tau: float) -> float:
    """Predicted continuous phase for large n and tau_tilde >> 1:
    phi_n(tau) = n(n-1) tau / 2 + tau / 8.

    The tau/8 term is the next-to-next-to-leading-order spectral error; no
    uniform small-tau_tilde formula is attempted.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return 0.5 * n * (n - 1) * tau + NNLO_PHASE_SLOPE * tau


def fga_closed_form(params: ModelParams, n: int, t: float) -> complex:
    """Semiclassical limit of the frozen-Gaussian diagonal element:

        e^{-i (n - 1/2) omega_e t} e^{-i U n (n-2) t / 2} / sqrt(1 - i n U t)

    so |.|^2 = 1 / sqrt(1 + (n U t)^2): unitarity decays for any nonzero
    interaction, and at U = 0 the ground-state energy carries the wrong
    sign."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = n * params.interaction * t
    return (cmath.exp(-1j * (n - 0.5) * params.omega_e * t)
            * cmath.exp(-0.5j * params.interaction * n * (n - 2) * t)
            / cmath.sqrt(1.0 - 1j * x))


def fga_abs2_limit(n: int, interaction: float, t: float) -> float:
    """|fga_closed_form|^2 = 1 / sqrt(1 + (n U t)^2)."""
    x = n * interaction * t
    return 1.0 / math.sqrt(1.0 + x * x)


def stirling_norm(n: int) -> float:
    """sqrt(2 pi n) (n/e)^n / n!, evaluated in log space; increases toward 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.exp(0.5 * math.log(2.0 * math.pi * n)
                    + n * math.log(n) - n - math.lgamma(n + 1))
