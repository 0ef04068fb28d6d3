"""Single-site Bose-Hubbard model: exact quantum references and the
closed-form classical ingredients of the semiclassical propagator.

The Hamiltonian is H = omega_e * n + (U/2) n (n - 1) in the number basis;
classically H(z, z*) = omega_e |z|^2 + (U/2)|z|^4.  The U(1) symmetry makes
|z|^2 a constant of motion, so trajectory, action, stability factor and
phase correction are all elementary closed forms.  Everything here is a pure
function in double precision; extended precision lives in the quadrature
module only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters: oscillator frequency and on-site interaction.

    Negative interaction is allowed (the exact formulas hold for either
    sign; e.g. omega_e = 1, U = -1 makes E_0 = E_2 = 0 degenerate).
    """

    omega_e: float
    interaction: float

    def __post_init__(self):
        if not (math.isfinite(self.omega_e) and math.isfinite(self.interaction)):
            raise ValueError("model parameters must be finite")


@dataclass(frozen=True)
class ClassicalIngredients:
    """Everything the semiclassical propagator needs along one trajectory."""

    trajectory_value: complex
    action: float
    stability_factor: complex
    phase_correction: float
    full_prefactor: complex


@dataclass(frozen=True)
class SemiclassicalScale:
    """The limit n_bar -> infinity at fixed U * n_bar."""

    n_bar: float
    u_nbar: float

    @classmethod
    def from_params(cls, params: ModelParams, n_bar: float) -> "SemiclassicalScale":
        if not n_bar > 0:
            raise ValueError("n_bar must be positive")
        return cls(n_bar=n_bar, u_nbar=params.interaction * n_bar)


def exact_energy(params: ModelParams, n: int) -> float:
    """E_n = omega_e n + (U/2) n (n - 1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return params.omega_e * n + 0.5 * params.interaction * n * (n - 1)


def exact_propagator_element(params: ModelParams, n: int, t: float) -> complex:
    """Diagonal element exp(-i t E_n) of the exact time evolution operator."""
    return cmath.exp(-1j * t * exact_energy(params, n))


def classical_trajectory(params: ModelParams, z0: complex, t: float) -> complex:
    """z(t) = exp[-i t (omega_e + U |z0|^2)] z0.

    A harmonic rotation whose frequency depends on the conserved amplitude:
    the classical fingerprint of the anharmonicity.
    """
    s = abs(z0) ** 2
    return cmath.exp(-1j * t * (params.omega_e + params.interaction * s)) * z0


def classical_action(params: ModelParams, z0: complex, t: float) -> float:
    """S_t = (U/2) t |z0|^4 -- the Lagrangian reduces to the anharmonic part
    of H and is itself conserved along the trajectory."""
    return 0.5 * params.interaction * t * abs(z0) ** 4


def stability_factor(params: ModelParams, z0: complex, t: float) -> complex:
    """sqrt(d z_t / d z0) = sqrt(1 - i U t |z0|^2) exp[-i t (omega_e + U|z0|^2)/2].

    The square-root branch must be continuous in t from +1 at t = 0.  Here
    arg(1 - i U t |z0|^2) stays inside (-pi/2, pi/2) for all t, so the
    principal branch *is* the continuous one; no phase tracking is needed.
    """
    s = abs(z0) ** 2
    u = params.interaction
    return cmath.sqrt(1 - 1j * u * t * s) * cmath.exp(
        -0.5j * t * (params.omega_e + u * s))


def phase_correction(params: ModelParams, z0: complex, t: float) -> float:
    """theta_t = (omega_e / 2 + U |z0|^2) t, from the mixed derivative
    d^2 H / dz dz* = omega_e + 2 U |z|^2 evaluated along the trajectory."""
    s = abs(z0) ** 2
    return (0.5 * params.omega_e + params.interaction * s) * t


def full_prefactor(params: ModelParams, z0: complex, t: float) -> complex:
    """R_t = exp(i theta_t) R_t^HK = sqrt(1 - i U t |z0|^2) exp(i U t |z0|^2 / 2).

    The omega_e phases cancel between theta_t and the stability factor,
    leaving a purely interaction-driven prefactor.
    """
    s = abs(z0) ** 2
    u = params.interaction
    return cmath.sqrt(1 - 1j * u * t * s) * cmath.exp(0.5j * u * t * s)


def classical_ingredients(params: ModelParams, z0: complex, t: float) -> ClassicalIngredients:
    """Bundle of all trajectory-level quantities at (z0, t)."""
    return ClassicalIngredients(
        trajectory_value=classical_trajectory(params, z0, t),
        action=classical_action(params, z0, t),
        stability_factor=stability_factor(params, z0, t),
        phase_correction=phase_correction(params, z0, t),
        full_prefactor=full_prefactor(params, z0, t),
    )
