"""Herman-Kluk semiclassical propagator for the single-site Bose-Hubbard
model: closed-form classical ingredients, configurable-precision oscillatory
quadrature for the diagonal matrix elements, steepest-descent asymptotics,
phase/plateau analysis, and Wigner-function wave-packet dynamics.
"""

from .analysis import (PhaseCurve, PlateauEstimate, build_phase_curve,
                       default_scaled_window, estimate_plateau,
                       fit_delta_phi_slope, steps_for_unwrap)
from .asymptotics import (NNLO_PHASE_SLOPE, SaddleData, fga_abs2_limit,
                          fga_closed_form, hk_phase_nnlo, hk_spectrum_lo,
                          hk_spectrum_no_theta, saddle_points, stirling_norm)
from .errors import (DegenerateInput, HkboseError, InsufficientData,
                     NonConvergence, UnwrapFailure)
from .kernels import BACKEND as KERNEL_BACKEND
from .model import (ClassicalIngredients, ModelParams, SemiclassicalScale,
                    classical_action, classical_ingredients,
                    classical_trajectory, exact_energy,
                    exact_propagator_element, full_prefactor,
                    phase_correction, stability_factor)
from .propagator import (Method, OffDiagonalEstimate, PropagatorSample, g_n,
                         g_n_fga, g_n_no_theta, matrix_element,
                         off_diagonal_check)
from .quadrature import (IntegralResult, PrecisionConfig,
                         choose_working_digits, integrate_radial,
                         truncation_limit)
from .wigner import (GridSpec, NumberState, WignerField, coherent_dyad_wigner,
                     coherent_state, evolve_number_state, exact_wigner,
                     hk_wigner, hk_wigner_direct_oracle, initial_wigner,
                     poisson_cutoff, render_field, twa_wigner,
                     wigner_from_number_state)

__version__ = "0.1.0"
