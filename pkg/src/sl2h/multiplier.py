"""Spectral-side multiplier operators and their norm-bound functionals.

A *multiplier symbol* scales each spectral component of a transform:
``hat_H(lambda) -> m(lambda) hat_H(lambda)`` on the continuous part and
``hat_B(k) -> m_k hat_B(k)`` on the discrete part.  Applying a symbol to
a profile means conjugating that scaling by the transform pair
(forward, multiply, invert).

*Spectral* symbols arise from a scalar function of the Casimir-type
eigenvalue: the continuous argument is ``(1 + lambda^2)/4 >= 1/4`` and
the discrete argument at index ``m`` is ``(1 - m^2)/4``, which is
negative for ``|m| >= 2`` -- the source of the heat propagator's
large-time *growth* on pairs with a discrete component (the ``m = 3``
factor is ``exp(+2t)``) and of domain errors for fractional powers.

Three computable bound functionals are provided (existential constants
dropped):

* :func:`multiplier_norm_bound` -- weak-measure supremum of the symbol
  plus the weighted discrete sum;
* :func:`spectral_norm_bound` -- near-edge / far supremum form for
  monotone spectral functions, with near-edge exponent ``3/2 * gamma``
  in the even class and ``1/2 * gamma`` in the odd one
  (``gamma = 1/p - 1/q``);
* :func:`heat_bound` -- the closed piecewise evaluation for the heat
  symbol: ``t^-gamma`` for short time, ``e^{-t/4} t^{-3 gamma/2}`` for
  long, plus the discrete sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ValidationError
from .profiles import RadialProfile
from .quadrature import RadialRule, SpectralGrid, radial_weight
from .spectrum import Parity, TypePair, plancherel_density, weak_sup_norm
from .spherical import EtaTable
from .transform import (SpectralData, discrete_kernel, forward, inverse,
                        parity_sign, principal_kernel)

__all__ = [
    "MultiplierSymbol",
    "SpectralFunction",
    "identity_symbol",
    "zero_symbol",
    "constant_symbol",
    "heat_symbol",
    "sobolev_symbol",
    "rational_symbol",
    "symbol_from_spectral",
    "compose_symbols",
    "apply_symbol",
    "apply_fourier_multiplier",
    "apply_spectral_multiplier",
    "heat_propagator",
    "sobolev_operator",
    "multiplier_matrix",
    "BoundValue",
    "multiplier_norm_bound",
    "spectral_norm_bound",
    "heat_bound",
    "gaussian_power_sup",
]


# ----------------------------------------------------------------------
# symbols
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplierSymbol:
    """A spectral scaling rule for one type pair.

    ``continuous`` maps an array of real ``lambda`` to complex values;
    ``discrete`` holds one value per index in the pair's discrete set.
    """

    pair: TypePair
    continuous: Callable = field(compare=False)
    discrete: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        want = set(self.pair.gamma())
        got = set(self.discrete)
        if want != got:
            raise ValidationError(
                f"discrete values cover {sorted(got)} but the pair "
                f"({self.pair.l}, {self.pair.n}) needs {sorted(want)}")
        for m, v in self.discrete.items():
            v = complex(v)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValidationError(f"symbol not finite at discrete index {m}")

    def sample(self, lams) -> np.ndarray:
        vals = np.asarray(self.continuous(np.asarray(lams, dtype=float)),
                          dtype=complex)
        if not np.all(np.isfinite(vals.view(float))):
            raise ValidationError(
                f"symbol {self.name or '<anonymous>'} not finite on the grid")
        return vals


def _make(pair, fn, disc_fn, name):
    discrete = {}
    for m in pair.gamma():
        v = complex(disc_fn(m))
        discrete[m] = v
    return MultiplierSymbol(pair, fn, discrete, name)


def identity_symbol(pair: TypePair) -> MultiplierSymbol:
    return _make(pair, lambda lam: np.ones_like(np.asarray(lam, dtype=float)),
                 lambda m: 1.0, "identity")


def zero_symbol(pair: TypePair) -> MultiplierSymbol:
    return _make(pair, lambda lam: np.zeros_like(np.asarray(lam, dtype=float)),
                 lambda m: 0.0, "zero")


def constant_symbol(pair: TypePair, value: complex) -> MultiplierSymbol:
    value = complex(value)
    return _make(pair, lambda lam, v=value: np.full(np.shape(lam), v),
                 lambda m, v=value: v, f"const:{value}")


def heat_symbol(pair: TypePair, time: float) -> MultiplierSymbol:
    """Heat-flow symbol ``exp(-time (1 + zeta^2)/4)``: continuous factor
    ``exp(-time (1 + lambda^2)/4)``, discrete factor
    ``exp(-time (1 - m^2)/4)`` (growing for ``|m| >= 2``)."""
    if not (time > 0.0):
        raise ValidationError(f"heat time must be positive, got {time}")
    return _make(pair,
                 lambda lam, t=float(time): np.exp(-t * (1.0 + np.asarray(lam) ** 2) / 4.0),
                 lambda m, t=float(time): math.exp(-t * (1.0 - m * m) / 4.0),
                 f"heat:{time}")


def rational_symbol(pair: TypePair, a: float) -> MultiplierSymbol:
    """``(1 + zeta^2)^(-a)``: continuous ``(1 + lambda^2)^-a``, discrete
    ``(1 - m^2)^-a``.  Errors when a discrete argument hits zero (it
    does at ``|m| = 1``) or goes negative with fractional ``a``."""
    def disc(m, aa=float(a)):
        base = 1.0 - m * m
        return _real_power(base, -aa, f"discrete index {m}")
    return _make(pair,
                 lambda lam, aa=float(a): (1.0 + np.asarray(lam) ** 2) ** (-aa),
                 disc, f"rational:{a}")


def _real_power(base: float, expo: float, where: str) -> float:
    if base > 0.0:
        return base ** expo
    if base == 0.0:
        if expo > 0.0:
            return 0.0
        if expo == 0.0:
            return 1.0
        raise ValidationError(f"zero base with negative exponent at {where}")
    if float(expo).is_integer():
        return float(base ** int(expo))
    raise ValidationError(
        f"negative base {base} with fractional exponent {expo} at {where}")


def sobolev_symbol(pair: TypePair, a: float) -> MultiplierSymbol:
    """Power symbol ``(1 + (1 + zeta^2)/4)^a``.

    Continuous base ``(5 + lambda^2)/4`` is always positive; the
    discrete base ``(5 - m^2)/4`` turns negative for ``|m| >= 3`` and a
    fractional ``a`` is then rejected, naming the offending index.
    """
    def disc(m, aa=float(a)):
        base = (5.0 - m * m) / 4.0
        return _real_power(base, aa, f"discrete index {m} (base {base})")
    return _make(pair,
                 lambda lam, aa=float(a): ((5.0 + np.asarray(lam) ** 2) / 4.0) ** aa,
                 disc, f"sobolev:{a}")


@dataclass(frozen=True)
class SpectralFunction:
    """A scalar function of the spectral eigenvalue ``s``.

    ``monotone_decreasing`` asserts that ``|fn|`` is non-increasing on
    ``[1/4, oo)`` with limit zero -- the hypothesis under which the
    near-edge/far bound applies.  The assertion is spot-checked on a
    grid before use.
    """

    fn: Callable
    monotone_decreasing: bool = False
    name: str = ""

    def __call__(self, s):
        return self.fn(s)


def symbol_from_spectral(pair: TypePair, fn: Callable, name: str = "") -> MultiplierSymbol:
    """Multiplier symbol of a spectral function: continuous argument
    ``(1 + lambda^2)/4``, discrete argument ``(1 - m^2)/4``.

    The function must be finite at every required argument, including
    the negative discrete ones; otherwise a validation error names the
    offending point.
    """
    fn_ = fn.fn if isinstance(fn, SpectralFunction) else fn

    def disc(m):
        s = (1.0 - m * m) / 4.0
        try:
            v = complex(fn_(s))
        except (ValueError, ZeroDivisionError, FloatingPointError) as exc:
            raise ValidationError(
                f"spectral function undefined at discrete argument {s} "
                f"(index {m}): {exc}") from exc
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValidationError(
                f"spectral function not finite at discrete argument {s} (index {m})")
        return v

    return _make(pair,
                 lambda lam: fn_((1.0 + np.asarray(lam, dtype=float) ** 2) / 4.0),
                 disc, name or getattr(fn, "name", ""))


def compose_symbols(m1: MultiplierSymbol, m2: MultiplierSymbol) -> MultiplierSymbol:
    """Pointwise product; exact in the spectral domain."""
    if m1.pair != m2.pair:
        raise ValidationError("cannot compose symbols of different pairs")
    return MultiplierSymbol(
        m1.pair,
        lambda lam, a=m1.continuous, b=m2.continuous: np.asarray(a(lam)) * np.asarray(b(lam)),
        {m: m1.discrete[m] * m2.discrete[m] for m in m1.discrete},
        f"({m1.name})*({m2.name})")


# ----------------------------------------------------------------------
# application
# ----------------------------------------------------------------------

def apply_symbol(symbol: MultiplierSymbol, spectral: SpectralData) -> SpectralData:
    """Scale a transform by a symbol (pure spectral-domain operation)."""
    if symbol.pair != spectral.pair:
        raise ValidationError("symbol and spectral data belong to different pairs")
    hat_H = spectral.hat_H * symbol.sample(spectral.grid.samples)
    hat_B = {m: spectral.hat_B[m] * symbol.discrete[m] for m in spectral.hat_B}
    return spectral.with_parts(hat_H=hat_H, hat_B=hat_B)


def apply_fourier_multiplier(symbol: MultiplierSymbol, profile: RadialProfile,
                             grid: SpectralGrid,
                             eta_table: EtaTable | None = None) -> RadialProfile:
    """Transform, scale by the symbol, transform back onto the profile's
    own radial rule."""
    spectral = forward(profile, grid, eta_table)
    return inverse(apply_symbol(symbol, spectral), profile.rule, eta_table)


def apply_spectral_multiplier(fn, profile: RadialProfile, grid: SpectralGrid,
                              eta_table: EtaTable | None = None) -> RadialProfile:
    """Apply a scalar function of the spectral eigenvalue."""
    symbol = symbol_from_spectral(profile.pair, fn)
    return apply_fourier_multiplier(symbol, profile, grid, eta_table)


def heat_propagator(time: float, profile: RadialProfile, grid: SpectralGrid,
                    eta_table: EtaTable | None = None) -> RadialProfile:
    """Heat flow for time ``time > 0`` applied to a profile."""
    return apply_fourier_multiplier(heat_symbol(profile.pair, time),
                                    profile, grid, eta_table)


def sobolev_operator(a: float, profile: RadialProfile, grid: SpectralGrid,
                     eta_table: EtaTable | None = None) -> RadialProfile:
    """Power ``a`` of (one plus) the spectral eigenvalue applied to a
    profile."""
    return apply_fourier_multiplier(sobolev_symbol(profile.pair, a),
                                    profile, grid, eta_table)


def multiplier_matrix(symbol: MultiplierSymbol, rule: RadialRule,
                      grid: SpectralGrid,
                      eta_table: EtaTable | None = None) -> np.ndarray:
    """Dense matrix of inverse-scale-forward acting on profile values.

    Agrees with :func:`apply_fourier_multiplier` to rounding; used where
    the same operator is applied many times (fixed-point solvers), since
    one matrix-vector product replaces two kernel passes.
    """
    pair = symbol.pair
    if pair.gamma() and (eta_table is None or not eta_table.covers(pair)):
        raise ValidationError(
            f"pair ({pair.l}, {pair.n}) has discrete components; "
            "a covering calibration table is required")
    kern = principal_kernel(pair, grid, rule)
    half = (grid.node_count - 1) // 2
    lams = grid.samples
    mu_w = plancherel_density(pair.tau, lams) * grid.weights
    mvals = symbol.sample(lams)
    dw = radial_weight(rule.nodes) * rule.weights

    d_pos = (mu_w * mvals)[half:]
    d_neg = (mu_w * mvals)[:half][::-1]  # lambda = -h, -2h, ... matching rows 1..
    # forward then inverse, both split over the sign of lambda;
    # the parity signs cancel (s^2 = 1)
    a_part = (np.conj(kern).T * d_pos) @ kern
    b_part = (kern[1:].T * d_neg) @ np.conj(kern[1:])
    mat = (a_part + b_part) / (4.0 * np.pi)

    swapped = pair.swapped()
    for m in pair.gamma():
        eta2 = eta_table.get(pair.l, pair.n, m) ** 2
        col = discrete_kernel(swapped, m, rule)
        row = discrete_kernel(pair, m, rule)
        mat = mat + (abs(m) * eta2 * symbol.discrete[m] / (2.0 * np.pi)) \
            * np.outer(col, row)
    # the radial measure enters once, on the input side
    return mat * dw[np.newaxis, :]


# ----------------------------------------------------------------------
# bounds
# ----------------------------------------------------------------------

class BoundValue(float):
    """A bound total that also carries its constituent terms."""

    terms: dict

    def __new__(cls, total: float, terms: dict):
        obj = super().__new__(cls, total)
        obj.terms = dict(terms)
        return obj


def _gamma_exponent(p: float, q: float) -> float:
    if not (1.0 < p <= 2.0 <= q < math.inf):
        raise ValidationError(
            f"exponents must satisfy 1 < p <= 2 <= q < inf, got p={p}, q={q}")
    return 1.0 / p - 1.0 / q


def multiplier_norm_bound(symbol: MultiplierSymbol, p: float, q: float,
                          grid: SpectralGrid | None = None) -> BoundValue:
    """Computable operator-norm bound for a multiplier symbol:
    weak-measure supremum to the power ``1/p - 1/q`` plus the weighted
    discrete sum.  Degree-1 homogeneous in the symbol; ``inf`` when the
    weak term diverges."""
    gamma = _gamma_exponent(p, q)
    grid = grid or SpectralGrid(200.0, 8001)
    weak = weak_sup_norm(lambda lam: np.abs(symbol.sample(lam)),
                         symbol.pair.tau, grid, gamma)
    disc = sum(abs(symbol.discrete[m]) * abs(m) ** gamma for m in symbol.discrete)
    return BoundValue(weak + disc, {"weak": weak, "discrete": disc})


def _check_monotone(phi: SpectralFunction) -> None:
    if not phi.monotone_decreasing:
        raise ValidationError(
            "spectral bound requires a function flagged monotone-decreasing "
            "on [1/4, oo) with limit zero")
    s = np.concatenate([np.linspace(0.25, 2.0, 200),
                        np.geomspace(2.0, 1e8, 200)])
    v = np.abs(np.asarray(phi.fn(s), dtype=complex))
    if not np.all(np.isfinite(v)):
        raise ValidationError("spectral function not finite on [1/4, oo)")
    if np.any(np.diff(v) > 1e-12 * max(1.0, float(v[0]))):
        raise ValidationError("monotonicity check failed: |fn| increases on [1/4, oo)")
    if v[-1] > 1e-6 * max(1.0, float(v[0])):
        raise ValidationError("monotonicity check failed: |fn| does not decay to zero")


def spectral_norm_bound(phi: SpectralFunction, p: float, q: float,
                        pair: TypePair) -> BoundValue:
    """Near-edge / far supremum bound for a monotone spectral function.

    Near the spectral edge ``s = 1/4`` the weight is
    ``(s - 1/4)^(3/2 gamma)`` in the even class and
    ``(s - 1/4)^(1/2 gamma)`` in the odd one; away from the edge both
    classes carry ``(s - 1/4)^gamma``.  The total is the max of the two
    suprema plus the discrete sum.
    """
    gamma = _gamma_exponent(p, q)
    _check_monotone(phi)
    near_expo = (1.5 if pair.tau is Parity.EVEN else 0.5) * gamma

    ds_near = np.geomspace(1e-12, 0.25, 500)
    near_v = np.abs(np.asarray(phi.fn(0.25 + ds_near), dtype=complex))
    near = float(np.max(near_v * ds_near ** near_expo))

    far = 0.0
    lo, hi = 0.25, 1e4
    for _ in range(6):
        ds_far = np.geomspace(lo, hi, 800)
        vals = np.abs(np.asarray(phi.fn(0.25 + ds_far), dtype=complex)) * ds_far ** gamma
        far = max(far, float(np.max(vals)))
        # widen until the outer decade stops contributing
        outer = float(np.max(vals[ds_far > hi / 10.0]))
        if outer < far * (1.0 - 1e-9) or outer == 0.0:
            break
        lo, hi = hi / 10.0, hi * 100.0
        if hi > 1e14:
            return BoundValue(math.inf, {"sup": math.inf, "discrete": 0.0})

    disc = sum(abs(complex(phi.fn((1.0 - m * m) / 4.0))) * abs(m) ** gamma
               for m in pair.gamma())
    sup_part = max(near, far)
    return BoundValue(sup_part + disc,
                      {"near_edge": near, "far": far, "discrete": disc})


def heat_bound(time: float, p: float, q: float, pair: TypePair) -> BoundValue:
    """Closed-form heat-flow bound: ``t^-gamma`` for ``t <= 1``,
    ``e^{-t/4} t^{-3 gamma/2}`` for ``t > 1``, plus the discrete sum
    ``sum exp(-t (1 - m^2)/4) |m|^gamma`` (which *grows* in ``t`` when
    some ``|m| >= 2``)."""
    if not (time > 0.0):
        raise ValidationError(f"time must be positive, got {time}")
    gamma = _gamma_exponent(p, q)
    if time <= 1.0:
        cont = time ** (-gamma)
    else:
        cont = math.exp(-time / 4.0) * time ** (-1.5 * gamma)
    disc = sum(math.exp(-time * (1.0 - m * m) / 4.0) * abs(m) ** gamma
               for m in pair.gamma())
    return BoundValue(cont + disc, {"continuous": cont, "discrete": disc})


def gaussian_power_sup(time: float, alpha: float, r: float) -> float:
    """Closed form of ``sup_{x > 0} exp(-time x^2) x^(alpha/r)``:
    equals ``exp(-alpha/(2r)) * (alpha/(2 r time))^(alpha/(2r))``."""
    if not (time > 0.0 and alpha >= 0.0 and r > 0.0):
        raise ValidationError(
            f"need time > 0, alpha >= 0, r > 0; got ({time}, {alpha}, {r})")
    beta = alpha / (2.0 * r)
    if beta == 0.0:
        return 1.0
    return math.exp(-beta) * (alpha / (2.0 * r * time)) ** beta
