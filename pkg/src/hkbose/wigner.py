"""Wave-packet dynamics in phase space: exact, semiclassical (HK) and
truncated-Wigner evolution of an initial coherent state's Wigner function.

Conventions (quantum-optics complex notation): alpha = (q + i p) / sqrt(2),
W(alpha) = int d^2eta / pi e^{eta* alpha - eta alpha*} chi(eta), normalized
so that int W d^2alpha / pi = 1 and a coherent state |z> has
W = 2 exp(-2 |alpha - z|^2).

The production route for exact and HK fields expands the state over number
states: the propagator is diagonal there, so evolution is a per-coefficient
phase (exact) or g_n damping (HK), and the field follows from the
number-dyad Laguerre closed form evaluated by the hot kernel.  The direct
double phase-space integral for the HK field is kept only as a Monte-Carlo
oracle -- mathematically equivalent, vastly more expensive.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .model import ModelParams
from .propagator import Method, matrix_element
from .quadrature import PrecisionConfig

DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class NumberState:
    """A (possibly non-normalized) pure state sum_n c_n |n>, n <= n_cut."""

    coeffs: np.ndarray
    n_cut: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           np.ascontiguousarray(self.coeffs, dtype=np.complex128))
        if self.coeffs.shape != (self.n_cut + 1,):
            raise ValueError("coeffs must have length n_cut + 1")

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


def poisson_cutoff(z_i: complex, tol: float = DEFAULT_TAIL_TOL) -> int:
    """Smallest N whose Poisson tail sum_{n>N} e^{-|z|^2} |z|^{2n} / n! < tol."""
    lam = abs(z_i) ** 2
    if lam == 0.0:
        return 0
    cum = 0.0
    n = 0
    log_lam = math.log(lam)
    while True:
        cum += math.exp(-lam + n * log_lam - math.lgamma(n + 1))
        if 1.0 - cum < tol:
            return n
        n += 1
        if n > 100000:
            raise RuntimeError("Poisson cutoff did not terminate")


def coherent_state(z_i: complex, n_cut: int | None = None,
                   tol: float = DEFAULT_TAIL_TOL) -> NumberState:
    """Number-basis expansion c_n = e^{-|z|^2/2} z^n / sqrt(n!)."""
    if n_cut is None:
        n_cut = poisson_cutoff(z_i, tol)
    n = np.arange(n_cut + 1)
    lam = abs(z_i) ** 2
    log_mag = -0.5 * lam + 0.5 * (n * math.log(lam) if lam > 0 else 0.0) \
        - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    phases = np.exp(1j * n * cmath.phase(z_i)) if z_i != 0 else np.ones_like(n, dtype=complex)
    coeffs = np.exp(log_mag) * phases
    if lam == 0.0:
        coeffs = np.zeros(n_cut + 1, dtype=complex)
        coeffs[0] = 1.0
    return NumberState(coeffs=coeffs, n_cut=n_cut)


def evolve_number_state(state: NumberState, params: ModelParams, t: float,
                        method: Method, config: PrecisionConfig,
                        fga_keep_theta: bool = True) -> NumberState:
    """Apply the diagonal propagator: c_n <- U_nn(t) c_n.

    Exact evolution preserves the norm; HK damps it through |g_n| < 1 and is
    deliberately left un-renormalized.
    """
    out = state.coeffs.copy()
    for n in range(state.n_cut + 1):
        if out[n] == 0.0:
            continue
        sample = matrix_element(params, method, n, t, config,
                                fga_keep_theta=fga_keep_theta)
        out[n] *= sample.value
    return NumberState(coeffs=out, n_cut=state.n_cut)


def initial_wigner(z_i: complex, alpha: complex) -> float:
    """W_0(alpha) = 2 exp(-2 |alpha - z_i|^2)."""
    return 2.0 * math.exp(-2.0 * abs(alpha - z_i) ** 2)


def wigner_from_number_state(state: NumberState, alpha) -> float | np.ndarray:
    """Wigner function of a number-basis state at one point or a batch.

    Accepts a complex scalar or an array of complex points; the heavy grid
    case goes through the compiled kernel.
    """
    arr = np.asarray(alpha, dtype=np.complex128)
    flat = arr.reshape(-1)
    w = kernels.wigner_series_batch(state.coeffs,
                                    np.ascontiguousarray(flat.real),
                                    np.ascontiguousarray(flat.imag))
    if arr.ndim == 0:
        return float(w[0])
    return w.reshape(arr.shape)


def exact_wigner(z_i: complex, params: ModelParams, t: float, alpha,
                 n_cut: int | None = None) -> float | np.ndarray:
    """Exactly evolved Wigner function via the number-basis series."""
    state = coherent_state(z_i, n_cut)
    # exact evolution needs no quadrature; apply the spectral phases directly
    n = np.arange(state.n_cut + 1)
    energies = params.omega_e * n + 0.5 * params.interaction * n * (n - 1)
    evolved = NumberState(coeffs=state.coeffs * np.exp(-1j * energies * t),
                          n_cut=state.n_cut)
    return wigner_from_number_state(evolved, alpha)


def hk_wigner(z_i: complex, params: ModelParams, t: float, alpha,
              n_cut: int | None = None,
              config: PrecisionConfig = PrecisionConfig()) -> float | np.ndarray:
    """HK-evolved Wigner function via the number-basis route (the propagator
    is diagonal in n, which makes the direct 4D integral redundant)."""
    state = coherent_state(z_i, n_cut)
    evolved = evolve_number_state(state, params, t, Method.HK, config)
    return wigner_from_number_state(evolved, alpha)


def twa_wigner(z_i: complex, params: ModelParams, t: float, alpha) -> float | np.ndarray:
    """Truncated-Wigner evolution: transport W_0 along the classical flow of
    the Wigner symbol, whose frequency is (omega_e - U) + U |alpha|^2.

    Positivity of W_0 is inherited for all times.
    """
    arr = np.asarray(alpha, dtype=np.complex128)
    omega = (params.omega_e - params.interaction) \
        + params.interaction * np.abs(arr) ** 2
    pre = arr * np.exp(1j * omega * t)
    w = 2.0 * np.exp(-2.0 * np.abs(pre - z_i) ** 2)
    if arr.ndim == 0:
        return float(w)
    return w


def coherent_dyad_wigner(u: complex, v: complex, alpha: complex) -> complex:
    """Wigner transform of the coherent dyad |u><v| (displaced-parity form):

        2 exp[ (a u* - a* u)* / ... ] -- explicitly:
        2 exp[ (a* u - a u*)/2 + (a v* - a* v)/2
               - |v - a|^2/2 - |a - u|^2/2 + (v* - a*)(a - u) ]

    Reduces to 2 exp(-2|a - z|^2) at u = v = z.
    """
    a = alpha
    expo = (0.5 * (np.conj(a) * u - a * np.conj(u))
            + 0.5 * (a * np.conj(v) - np.conj(a) * v)
            - 0.5 * abs(v - a) ** 2 - 0.5 * abs(a - u) ** 2
            + (np.conj(v) - np.conj(a)) * (a - u))
    return 2.0 * np.exp(expo)


def hk_wigner_direct_oracle(z_i: complex, params: ModelParams, t: float,
                            alpha: complex, mc_samples: int = 10 ** 5,
                            seed: int | None = None,
                            batch: int = 200_000) -> tuple[float, float]:
    """HK Wigner function from the double phase-space integral, by
    importance-sampled Monte Carlo over initial-condition pairs.

    Sampling q(z0) ~ exp(-|z0 - z_i|^2 / 2) makes the weight
    F(z0) = 2 R_t(z0) e^{i S_t} e^{i Im(z0* z_i)} bounded up to the slow
    prefactor growth; the estimator is Re[F F'* W_dyad(z_t, z_t'; alpha)].
    Returns (value, stderr).
    """
    if mc_samples < 10 ** 4:
        raise ValueError("mc_samples must be >= 1e4 for a usable stderr")
    rng = np.random.default_rng(seed)
    u = params.interaction
    w = params.omega_e

    total = 0.0
    total_sq = 0.0
    done = 0
    while done < mc_samples:
        m = min(batch, mc_samples - done)
        z0 = (rng.normal(z_i.real, 1.0, m) + 1j * rng.normal(z_i.imag, 1.0, m))
        z0p = (rng.normal(z_i.real, 1.0, m) + 1j * rng.normal(z_i.imag, 1.0, m))

        def weight(z):
            s = np.abs(z) ** 2
            pref = np.sqrt(1.0 - 1j * u * t * s) \
                * np.exp(-0.5j * t * (w + u * s))  # stability factor
            theta = (0.5 * w + u * s) * t
            action = 0.5 * u * t * s ** 2
            return 2.0 * pref * np.exp(1j * (theta + action)) \
                * np.exp(1j * (z.conjugate() * z_i).imag)

        f = weight(z0)
        fp = weight(z0p)
        zt = np.exp(-1j * t * (w + u * np.abs(z0) ** 2)) * z0
        ztp = np.exp(-1j * t * (w + u * np.abs(z0p) ** 2)) * z0p
        x = (f * np.conj(fp) * coherent_dyad_wigner(zt, ztp, alpha)).real
        total += float(x.sum())
        total_sq += float((x * x).sum())
        done += m

    mean = total / mc_samples
    var = max(0.0, total_sq / mc_samples - mean * mean)
    return mean, math.sqrt(var / mc_samples)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular lattice over complex alpha."""

    re_min: float = -4.0
    re_max: float = 4.0
    im_min: float = -4.0
    im_max: float = 4.0
    step: float = 0.05

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        n_re = int(round((self.re_max - self.re_min) / self.step)) + 1
        n_im = int(round((self.im_max - self.im_min) / self.step)) + 1
        return (self.re_min + self.step * np.arange(n_re),
                self.im_min + self.step * np.arange(n_im))


@dataclass(frozen=True)
class WignerField:
    """Wigner values per method on a lattice; values[m][i, j] corresponds to
    alpha = alpha_re[i] + 1j * alpha_im[j]."""

    grid: GridSpec
    alpha_re: np.ndarray
    alpha_im: np.ndarray
    values: dict = field(default_factory=dict)
    normalization: dict = field(default_factory=dict)


def render_field(z_i: complex, params: ModelParams, t: float,
                 grid: GridSpec = GridSpec(),
                 methods: tuple[str, ...] = ("exact", "hk", "twa"),
                 config: PrecisionConfig = PrecisionConfig(),
                 n_cut: int | None = None) -> WignerField:
    """Evaluate the requested Wigner fields on the lattice and report the
    normalization integral int W d^2alpha / pi per method (Riemann sum)."""
    re_ax, im_ax = grid.axes()
    re2, im2 = np.meshgrid(re_ax, im_ax, indexing="ij")
    alpha = re2 + 1j * im2
    cell = grid.step ** 2 / math.pi

    values = {}
    for m in methods:
        if m == "exact":
            values[m] = exact_wigner(z_i, params, t, alpha, n_cut)
        elif m == "hk":
            values[m] = hk_wigner(z_i, params, t, alpha, n_cut, config)
        elif m == "twa":
            values[m] = twa_wigner(z_i, params, t, alpha)
        elif m == "initial":
            values[m] = twa_wigner(z_i, params, 0.0, alpha)
        else:
            raise ValueError(f"unknown Wigner method '{m}'")
    normalization = {m: float(v.sum()) * cell for m, v in values.items()}
    return WignerField(grid=grid, alpha_re=re_ax, alpha_im=im_ax,
                       values=values, normalization=normalization)
