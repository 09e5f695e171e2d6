"""The two-part spectral transform of a radial profile.

For a profile ``f`` of type ``(l, n)`` the transform has a continuous
part indexed by real ``lambda`` and finitely many discrete coefficients
indexed by the pair's discrete set:

* ``hat_H(lambda) = s * Int_0^inf f(t) phi[l,n; lambda](a(t)) 2 sinh(2t) dt``
* ``hat_B(m)     = eta(m) * s * Int_0^inf f(t) phi[l,n; i|m|](a(t)) 2 sinh(2t) dt``

with the parity sign ``s = (-1)^((n-l)/2)`` coming from orienting the
radial integral over the *negative* dilation axis, and ``eta(m)`` the
calibrated discrete normalisation.  The inverse is

* ``f(t) = (1/4 pi^2) Int hat_H(lambda) phi[n,l; lambda](a(t))
            mu(lambda) d lambda
          + (1/2 pi) Sum_m hat_B(m) eta(m) |m| phi[n,l; i|m|](a(t))``

(the swapped pair ``(n, l)`` appears; for real ``lambda``,
``phi[n,l; lambda](a(t)) = s * conj(phi[l,n; lambda](a(t)))``, so one
kernel tableau serves both directions).

Kernel tableaux -- spherical functions sampled on (spectral grid) x
(radial rule) -- dominate the cost and are cached process-wide, keyed by
pair and rule fingerprints.  Negative-``lambda`` columns are recovered
from the conjugation symmetry ``phi[-lambda] = conj(phi[lambda])``
rather than stored.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError
from .profiles import RadialProfile
from .quadrature import RadialRule, SpectralGrid, integrate_radial, radial_weight
from .spectrum import TypePair, plancherel_density
from .spherical import EtaTable, phi_radial

__all__ = [
    "SpectralData",
    "forward",
    "inverse",
    "plancherel_check",
    "PlancherelResult",
    "adaptive_forward",
    "parity_sign",
    "principal_kernel",
    "discrete_kernel",
]

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def parity_sign(pair: TypePair) -> float:
    """``(-1)^((n - l)/2)``: the phase picked up by a type function under
    reflection of the dilation axis (always a sign, by parity)."""
    return -1.0 if ((pair.n - pair.l) // 2) % 2 else 1.0


def clear_kernel_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def principal_kernel(pair: TypePair, grid: SpectralGrid, rule: RadialRule) -> np.ndarray:
    """Table ``K[j, i] = phi[l,n; lambda_j](a(t_i))`` over the grid's
    nonnegative spectral nodes and the rule's radial nodes."""
    key = ("P", pair.l, pair.n, grid.key, rule.key)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return hit
    half = (grid.node_count - 1) // 2
    lams = grid.samples[half:]
    table = phi_radial(pair, lams, rule.nodes)
    table.flags.writeable = False
    with _CACHE_LOCK:
        _CACHE[key] = table
    return table


def discrete_kernel(pair: TypePair, m: int, rule: RadialRule) -> np.ndarray:
    """Row ``phi[l,n; i|m|](a(t_i))`` over the rule's radial nodes."""
    key = ("D", pair.l, pair.n, int(m), rule.key)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return hit
    row = phi_radial(pair, [1j * abs(m)], rule.nodes)[0]
    row.flags.writeable = False
    with _CACHE_LOCK:
        _CACHE[key] = row
    return row


@dataclass(frozen=True)
class SpectralData:
    """Transform of one profile: continuous samples plus discrete
    coefficients."""

    pair: TypePair
    grid: SpectralGrid
    hat_H: np.ndarray
    hat_B: dict

    def __post_init__(self):
        h = np.asarray(self.hat_H, dtype=complex)
        if h.shape != (self.grid.node_count,):
            raise ValidationError(
                f"hat_H shape {h.shape} does not match grid ({self.grid.node_count})")
        h = np.ascontiguousarray(h)
        h.flags.writeable = False
        object.__setattr__(self, "hat_H", h)
        object.__setattr__(self, "hat_B", dict(self.hat_B))

    def with_parts(self, hat_H=None, hat_B=None) -> "SpectralData":
        return replace(self,
                       hat_H=self.hat_H if hat_H is None else hat_H,
                       hat_B=dict(self.hat_B) if hat_B is None else dict(hat_B))


def _need_eta(pair: TypePair, eta_table: EtaTable | None) -> None:
    if pair.gamma() and (eta_table is None or not eta_table.covers(pair)):
        raise ValidationError(
            f"pair ({pair.l}, {pair.n}) has discrete components "
            f"{pair.gamma()}; a covering calibration table is required")


def _weighted_values(profile: RadialProfile) -> np.ndarray:
    return profile.values * radial_weight(profile.rule.nodes) * profile.rule.weights


def forward_raw(profile: RadialProfile, grid: SpectralGrid):
    """Transform with unit discrete normalisation; returns
    ``(hat_H, {m: raw coefficient})``.  Calibration feeds on this."""
    pair, rule = profile.pair, profile.rule
    s = parity_sign(pair)
    y = _weighted_values(profile)
    kern = principal_kernel(pair, grid, rule)
    pos = kern @ y
    neg = kern @ np.conj(y)
    half = (grid.node_count - 1) // 2
    hat = np.empty(grid.node_count, dtype=complex)
    hat[half:] = s * pos
    hat[:half] = s * np.conj(neg[1:])[::-1]
    raw = {m: s * (discrete_kernel(pair, m, rule) @ y) for m in pair.gamma()}
    return hat, raw


def forward(profile: RadialProfile, grid: SpectralGrid,
            eta_table: EtaTable | None = None) -> SpectralData:
    """Spectral transform of a profile.

    Pairs with a nonempty discrete set require a calibration table
    covering it (the discrete coefficients carry one factor of the
    normalisation constant each).
    """
    _need_eta(profile.pair, eta_table)
    hat, raw = forward_raw(profile, grid)
    pair = profile.pair
    hat_B = {m: eta_table.get(pair.l, pair.n, m) * raw[m] for m in raw}
    return SpectralData(pair, grid, hat, hat_B)


def inverse(spectral: SpectralData, rule: RadialRule,
            eta_table: EtaTable | None = None, *,
            include_discrete: bool = True) -> RadialProfile:
    """Invert a transform back to a radial profile on ``rule``.

    ``include_discrete=False`` reconstructs from the continuous part
    alone (the residual against the original profile is then exactly the
    discrete span -- which is how the calibration isolates it).
    """
    pair, grid = spectral.pair, spectral.grid
    if include_discrete and spectral.hat_B:
        _need_eta(pair, eta_table)
    s = parity_sign(pair)
    half = (grid.node_count - 1) // 2
    kern = principal_kernel(pair, grid, rule)

    coeff = spectral.hat_H * plancherel_density(pair.tau, grid.samples) * grid.weights
    pos = coeff[half:]
    neg_rev = coeff[:half][::-1]  # lambda = -h, -2h, ... pairing kern rows 1, 2, ...
    values = (s / (4.0 * np.pi)) * (pos @ np.conj(kern) + neg_rev @ kern[1:])

    if include_discrete:
        swapped = pair.swapped()
        for m, coef in spectral.hat_B.items():
            eta = eta_table.get(pair.l, pair.n, m)
            row = discrete_kernel(swapped, m, rule)
            values = values + (abs(m) / (2.0 * np.pi)) * coef * eta * row
    return RadialProfile(pair, rule, values)


@dataclass(frozen=True)
class PlancherelResult:
    lhs: float
    rhs: float

    @property
    def rel_err(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs), 1e-300)
        return abs(self.lhs - self.rhs) / scale


def spectral_energy(spectral: SpectralData) -> float:
    """Right-hand side of the Plancherel identity: continuous energy
    against the spectral measure plus weighted discrete energy."""
    grid, pair = spectral.grid, spectral.pair
    mu = plancherel_density(pair.tau, grid.samples)
    cont = float(np.real((np.abs(spectral.hat_H) ** 2 * mu) @ grid.weights)) \
        / (4.0 * np.pi)
    disc = sum(abs(m) * abs(c) ** 2 for m, c in spectral.hat_B.items()) / (2.0 * np.pi)
    return cont + disc


def plancherel_check(profile: RadialProfile, grid: SpectralGrid,
                     eta_table: EtaTable | None = None) -> PlancherelResult:
    """Compare ``Int |f|^2`` (Haar) with the spectral energy of its
    transform."""
    lhs = float(integrate_radial(np.abs(profile.values) ** 2, profile.rule).real)
    spectral = forward(profile, grid, eta_table)
    return PlancherelResult(lhs, spectral_energy(spectral))


def adaptive_forward(profile: RadialProfile, eta_table: EtaTable | None = None, *,
                     start: SpectralGrid | None = None, tail_fraction: float = 1e-10,
                     max_widenings: int = 3):
    """Transform on successively widened grids until the outer half of
    the continuous energy falls below ``tail_fraction`` of the total.

    The radial rule is refined in lockstep (about half a node per unit
    of ``lambda_max``); otherwise widening would run into the aliasing
    floor of the radial quadrature instead of the true spectral tail.
    Returns ``(spectral, converged)``; the last attempt is returned even
    when the tail criterion was not met.
    """
    grid = start or SpectralGrid(60.0, 1025)
    for attempt in range(max_widenings + 1):
        needed = int(math.ceil(grid.lambda_max / 2.0))
        if profile.rule.points_per_panel < needed:
            profile = profile.resampled(RadialRule(profile.rule.t_max, needed))
        spectral = forward(profile, grid, eta_table)
        mu = plancherel_density(profile.pair.tau, grid.samples)
        dens = np.abs(spectral.hat_H) ** 2 * mu * grid.weights
        total = float(np.sum(dens))
        outer = float(np.sum(dens[np.abs(grid.samples) > 0.5 * grid.lambda_max]))
        if total == 0.0 or outer <= tail_fraction * total:
            return spectral, True
        if attempt < max_widenings:
            grid = grid.widened(2.0)
    return spectral, False
