"""Harmonic analysis of matrix-type functions on the unimodular
2x2 group.

The package follows one pipeline:

``group``
    factorisations (triangular and polar) of unimodular matrices;
``spectrum`` / ``spherical``
    parity classes, discrete index sets, the spectral density, and
    spherical functions of a type pair;
``transform`` / ``calibration``
    the two-part spectral transform (continuous plus discrete), its
    inverse, the energy identity, and the fitted discrete
    normalisation constants;
``multiplier`` / ``inequalities``
    operators diagonal in the transform, computable operator-norm
    bounds, and ratio checks of the norm inequalities;
``pde``
    exact spectral heat flow, Picard solvers for two nonlinear
    integral equations, and their contraction horizons;
``io`` / ``cli``
    artifact formats and the ``sl2h`` command-line driver.
"""

from .calibration import calibrate_pair, calibrate_table, reference_profiles
from .errors import (CalibrationError, ConvergenceError, SL2HError,
                     ValidationError)
from .group import (GroupElement, PolarCoords, TriangularCoords, cartan,
                    diag_flow, identity, iwasawa, rotation, shear)
from .inequalities import (CheckEntry, RatioReport, TestFamily,
                           default_family, dual_hausdorff_young_check,
                           family_check, hausdorff_young_check, hyp_check,
                           nu_tilde_lp_norm, operator_norm_lower_bound,
                           paley_check)
from .multiplier import (BoundValue, MultiplierSymbol, SpectralFunction,
                         apply_fourier_multiplier, apply_spectral_multiplier,
                         apply_symbol, compose_symbols, constant_symbol,
                         gaussian_power_sup, heat_bound, heat_propagator,
                         heat_symbol, identity_symbol, multiplier_matrix,
                         multiplier_norm_bound, rational_symbol,
                         sobolev_operator, sobolev_symbol,
                         spectral_norm_bound, symbol_from_spectral,
                         zero_symbol)
from .pde import (CauchyState, WaveCoefficients, constant_forcing,
                  global_smallness_check, heat_existence_time,
                  linear_heat_solve, nonlinear_heat_solve,
                  nonlinear_wave_solve, wave_existence_time)
from .profiles import RadialProfile, bump_profile
from .quadrature import (PeriodicRule, RadialRule, SpectralGrid,
                         integrate_periodic, integrate_radial, radial_weight)
from .spectrum import (Parity, TypePair, gamma_set, plancherel_density,
                       spectral_measure_integral, weak_sup_norm)
from .spherical import (EtaTable, SphericalParams, phi, phi_elementary,
                        phi_group_integral, phi_radial, psi_discrete)
from .transform import (PlancherelResult, SpectralData, adaptive_forward,
                        forward, forward_raw, inverse, parity_sign,
                        plancherel_check, spectral_energy)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
