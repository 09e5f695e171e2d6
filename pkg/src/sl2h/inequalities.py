"""Numerical ratio checks for the Fourier inequalities.

Each check evaluates both sides of one inequality for a concrete profile
and reports their ratio.  The inequalities hold with existential
constants, so a single number can neither confirm nor refute them;
"verification" here means the ratios stay bounded over a family of test
profiles and drift by well under a percent when every grid is refined.
Two exact pinning points anchor the machinery: at ``p = 2`` each check
collapses to the Plancherel identity (ratio 1), and the interpolated
check collapses to its two endpoint checks at the endpoint exponents.

The spectral side is measured against the combined spectral measure:
``(1/4 pi) mu(tau, lam) d lam`` on the continuous spectrum plus the
weight ``|k| / (2 pi)`` at each discrete point -- the same measure that
makes the transform unitary on L^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ValidationError
from .multiplier import MultiplierSymbol, multiplier_matrix
from .profiles import RadialProfile, bump_profile
from .quadrature import RadialRule, SpectralGrid
from .spectrum import TypePair, plancherel_density, weak_sup_norm
from .spherical import EtaTable
from .transform import SpectralData, forward, inverse

__all__ = [
    "CheckEntry",
    "RatioReport",
    "TestFamily",
    "default_family",
    "nu_tilde_lp_norm",
    "hausdorff_young_check",
    "dual_hausdorff_young_check",
    "paley_check",
    "hyp_check",
    "family_check",
    "operator_norm_lower_bound",
]

_WEAK_GRID = SpectralGrid(200.0, 8001)


def holder_conjugate(p: float) -> float:
    """The exponent ``p'`` with ``1/p + 1/p' = 1`` (``1 <-> inf``)."""
    if math.isinf(p):
        return 1.0
    if p == 1.0:
        return math.inf
    return p / (p - 1.0)


def _validate_p(p: float, *, strict_lower: bool) -> None:
    lo_ok = p > 1.0 if strict_lower else p >= 1.0
    if not (lo_ok and p <= 2.0):
        bound = "(1, 2]" if strict_lower else "[1, 2]"
        raise ValidationError(f"exponent p must lie in {bound}, got {p}")


def nu_tilde_weights(pair: TypePair, grid: SpectralGrid) -> np.ndarray:
    """Quadrature weights for the continuous part of the spectral
    measure: ``(1/4 pi) mu(tau, lam) d lam`` sampled on the grid."""
    return plancherel_density(pair.tau, grid.samples) * grid.weights / (4.0 * np.pi)


def _discrete_weight(m: int) -> float:
    return abs(m) / (2.0 * np.pi)


def nu_tilde_lp_norm(spectral: SpectralData, p: float) -> float:
    """L^p norm of spectral data against the combined spectral measure.

    ``p = inf`` returns the supremum over both spectrum parts; at
    ``p = 2`` the square of this norm is the spectral energy, equal to
    the squared L^2 norm of the profile.
    """
    if p < 1.0:
        raise ValidationError(f"norm exponent must be >= 1, got {p}")
    mags = np.abs(spectral.hat_H)
    disc = {m: abs(c) for m, c in spectral.hat_B.items()}
    if math.isinf(p):
        top = float(np.max(mags)) if mags.size else 0.0
        return max([top, *disc.values()]) if disc else top
    w = nu_tilde_weights(spectral.pair, spectral.grid)
    total = float(mags ** p @ w)
    total += sum(_discrete_weight(m) * v ** p for m, v in disc.items())
    return total ** (1.0 / p)


@dataclass(frozen=True)
class CheckEntry:
    """One inequality evaluation: the two sides and their ratio."""

    label: str
    lhs: float
    rhs: float
    ratio: float

    def __post_init__(self):
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise ValidationError(
                f"non-finite inequality sides for {self.label!r}: "
                f"lhs={self.lhs}, rhs={self.rhs}")


def _entry(label: str, lhs: float, rhs: float) -> CheckEntry:
    if rhs == 0.0:
        raise ValidationError(f"degenerate check {label!r}: right side is 0")
    return CheckEntry(label, float(lhs), float(rhs), float(lhs / rhs))


def hausdorff_young_check(profile: RadialProfile, p: float, grid: SpectralGrid,
                          eta_table: EtaTable | None = None,
                          label: str = "") -> CheckEntry:
    """Ratio of the spectral L^{p'} norm of the transform to the group
    L^p norm of the profile, for ``1 <= p <= 2``.

    At ``p = 2`` both sides coincide (Plancherel); at ``p = 1`` the left
    side is the spectral supremum, which never exceeds the L^1 norm.
    """
    _validate_p(p, strict_lower=False)
    spectral = forward(profile, grid, eta_table=eta_table)
    lhs = nu_tilde_lp_norm(spectral, holder_conjugate(p))
    rhs = profile.lp_norm(p)
    return _entry(label or f"hy p={p}", lhs, rhs)


def dual_hausdorff_young_check(spectral: SpectralData, rule: RadialRule, p: float,
                               eta_table: EtaTable | None = None,
                               label: str = "") -> CheckEntry:
    """Ratio of the group L^{p'} norm of the inverse transform to the
    spectral L^p norm of the data, for ``1 <= p <= 2``.

    The data should come from an actual forward transform so that it
    lies in the range of the transform.
    """
    _validate_p(p, strict_lower=False)
    back = inverse(spectral, rule, eta_table=eta_table)
    lhs = back.lp_norm(holder_conjugate(p))
    rhs = nu_tilde_lp_norm(spectral, p)
    return _entry(label or f"dual-hy p={p}", lhs, rhs)


def _positive_weight_parts(psi: MultiplierSymbol, pair: TypePair,
                           grid: SpectralGrid, weak_grid: SpectralGrid):
    """Sampled continuous values, discrete values, weak-type norm and
    discrete sum of a positive spectral weight ``psi``."""
    cont = np.asarray(psi.sample(grid.samples))
    if np.any(np.abs(np.imag(cont)) > 1e-12 * (1.0 + np.abs(cont))):
        raise ValidationError(f"weight {psi.name!r} must be real-valued")
    cont = np.real(cont).astype(float)
    if np.any(cont <= 0.0):
        raise ValidationError(f"weight {psi.name!r} must be strictly positive")
    disc = {}
    for m in pair.gamma():
        v = psi.discrete[m]
        if abs(v.imag) > 1e-12 * (1.0 + abs(v)) or v.real <= 0.0:
            raise ValidationError(
                f"weight {psi.name!r} must be positive at discrete point {m}")
        disc[m] = float(v.real)

    weak = weak_sup_norm(psi.continuous, pair.tau, weak_grid, exponent=1.0)
    if not math.isfinite(weak):
        raise ValidationError(
            f"weak-type norm of {psi.name!r} diverges: the level sets "
            "{psi > alpha} have unbounded spectral measure, so the "
            "weighted inequalities do not apply to this weight")
    disc_sum = sum(v * abs(m) for m, v in disc.items())
    return cont, disc, weak, disc_sum


def paley_check(profile: RadialProfile, psi: MultiplierSymbol, p: float,
                grid: SpectralGrid, eta_table: EtaTable | None = None,
                weak_grid: SpectralGrid = _WEAK_GRID,
                label: str = "") -> CheckEntry:
    """Weighted-transform inequality ratio for ``1 < p <= 2``.

    Left side: L^p norm of the transform against the spectral measure
    reweighted by ``psi^(2-p)``.  Right side: ``(weak norm of psi plus
    its discrete sum)^((2-p)/p)`` times the group L^p norm.  At
    ``p = 2`` the weight drops out and the ratio pins to 1.
    """
    _validate_p(p, strict_lower=True)
    pair = profile.pair
    cont, disc, weak, disc_sum = _positive_weight_parts(psi, pair, grid, weak_grid)
    spectral = forward(profile, grid, eta_table=eta_table)

    w = nu_tilde_weights(pair, grid)
    lhs_p = float((np.abs(spectral.hat_H) ** p * cont ** (2.0 - p)) @ w)
    for m, c in spectral.hat_B.items():
        lhs_p += _discrete_weight(m) * abs(c) ** p * disc[m] ** (2.0 - p)
    lhs = lhs_p ** (1.0 / p)
    rhs = (weak + disc_sum) ** ((2.0 - p) / p) * profile.lp_norm(p)
    return _entry(label or f"paley p={p}", lhs, rhs)


def hyp_check(profile: RadialProfile, psi: MultiplierSymbol, p: float, b: float,
              grid: SpectralGrid, eta_table: EtaTable | None = None,
              weak_grid: SpectralGrid = _WEAK_GRID,
              label: str = "") -> CheckEntry:
    """Interpolated inequality ratio for ``1 < p <= 2`` and
    ``p <= b <= p'``.

    Left side: L^b norm of ``|transform| * psi^(1/b - 1/p')`` against
    the spectral measure; right side: ``(weak norm + discrete
    sum)^(1/b - 1/p')`` times the group L^p norm.  The exponent
    ``1/b - 1/p'`` vanishes at ``b = p'`` (plain transform-norm check)
    and equals ``(2-p)/p`` at ``b = p`` (the weighted check above).
    """
    _validate_p(p, strict_lower=True)
    pc = holder_conjugate(p)
    if not (p <= b <= pc):
        raise ValidationError(f"interpolation exponent b must lie in [{p}, {pc}], got {b}")
    pair = profile.pair
    cont, disc, weak, disc_sum = _positive_weight_parts(psi, pair, grid, weak_grid)
    spectral = forward(profile, grid, eta_table=eta_table)

    e = 1.0 / b - 1.0 / pc
    w = nu_tilde_weights(pair, grid)
    lhs_b = float(((np.abs(spectral.hat_H) * cont ** e) ** b) @ w)
    for m, c in spectral.hat_B.items():
        lhs_b += _discrete_weight(m) * (abs(c) * disc[m] ** e) ** b
    lhs = lhs_b ** (1.0 / b)
    rhs = (weak + disc_sum) ** e * profile.lp_norm(p)
    return _entry(label or f"hyp p={p} b={b}", lhs, rhs)


@dataclass(frozen=True)
class TestFamily:
    """Deterministic family of bump profiles probing one type pair.

    Members are smooth bumps ``exp(1 - 1/(1 - s^2))`` centered away from
    the origin (so every member is valid for all type pairs), optionally
    modulated by ``exp(i omega t)`` to inject higher frequencies.
    """

    pair: TypePair
    centers: tuple
    widths: tuple
    modulations: tuple

    def __post_init__(self):
        if not (len(self.centers) == len(self.widths) == len(self.modulations)):
            raise ValidationError("family parameter lists must share one length")
        for c, w in zip(self.centers, self.widths):
            if c - w <= 0.0:
                raise ValidationError(
                    f"bump [{c - w}, {c + w}] touches the origin; members "
                    "must be supported away from t=0")

    def __len__(self):
        return len(self.centers)

    def profiles(self, rule: RadialRule) -> list[RadialProfile]:
        return [bump_profile(self.pair, rule, c, w, omega=om)
                for c, w, om in zip(self.centers, self.widths, self.modulations)]


def default_family(pair: TypePair, size: int = 20,
                   seed: int | None = None) -> TestFamily:
    """Bumps with centers across [0.5, 4], widths cycling over [0.2, 1]
    and modulation frequencies cycling over {0, 2, 5}.

    A seed draws the same shapes with deterministic jitter instead of
    the fixed ladder, for spot-checking robustness of the ratios.
    """
    if size < 1:
        raise ValidationError(f"family size must be positive, got {size}")
    centers, widths, omegas = [], [], []
    width_cycle = (0.2, 0.4, 0.6, 0.8, 1.0)
    omega_cycle = (0.0, 2.0, 5.0)
    rng = None if seed is None else np.random.default_rng(seed)
    for i in range(size):
        frac = i / max(size - 1, 1)
        c = 0.5 + 3.5 * frac
        w = width_cycle[i % len(width_cycle)]
        om = omega_cycle[i % len(omega_cycle)]
        if rng is not None:
            c = float(rng.uniform(0.5, 4.0))
            w = float(rng.uniform(0.2, 1.0))
            om = float(rng.uniform(0.0, 5.0))
        centers.append(c)
        # keep the support strictly inside (0, t_max) for every rule used here
        widths.append(min(w, 0.9 * c))
        omegas.append(om)
    return TestFamily(pair, tuple(centers), tuple(widths), tuple(omegas))


@dataclass(frozen=True)
class RatioReport:
    """Per-member inequality ratios plus a grid-refinement drift figure."""

    which: str
    p: float
    b: float | None
    entries: tuple
    max_ratio: float
    refinement_delta: float | None

    def as_dict(self) -> dict:
        return {
            "which": self.which,
            "p": self.p,
            "b": self.b,
            "entries": [
                {"label": e.label, "lhs": e.lhs, "rhs": e.rhs, "ratio": e.ratio}
                for e in self.entries
            ],
            "max_ratio": self.max_ratio,
            "refinement_delta": self.refinement_delta,
        }


_CHECK_NAMES = ("hy", "dual-hy", "paley", "hyp")


def _run_members(which: str, profiles, p: float, b: float | None,
                 psi: MultiplierSymbol | None, rule: RadialRule,
                 grid: SpectralGrid, eta_table, weak_grid) -> list[CheckEntry]:
    entries = []
    for i, f in enumerate(profiles):
        label = f"member {i}"
        if which == "hy":
            entries.append(hausdorff_young_check(f, p, grid, eta_table, label=label))
        elif which == "dual-hy":
            spectral = forward(f, grid, eta_table=eta_table)
            entries.append(dual_hausdorff_young_check(
                spectral, rule, p, eta_table, label=label))
        elif which == "paley":
            entries.append(paley_check(f, psi, p, grid, eta_table,
                                       weak_grid=weak_grid, label=label))
        else:
            entries.append(hyp_check(f, psi, p, b, grid, eta_table,
                                     weak_grid=weak_grid, label=label))
    return entries


def family_check(which: str, family: TestFamily, p: float, *,
                 b: float | None = None, psi: MultiplierSymbol | None = None,
                 rule: RadialRule, grid: SpectralGrid,
                 eta_table: EtaTable | None = None,
                 weak_grid: SpectralGrid = _WEAK_GRID,
                 refine: bool = True) -> RatioReport:
    """Run one inequality check over a whole family and measure how much
    the worst ratio moves when both grids are refined (doubled radial
    panel density, doubled spectral resolution)."""
    if which not in _CHECK_NAMES:
        raise ValidationError(f"unknown check {which!r}; expected one of {_CHECK_NAMES}")
    if which in ("paley", "hyp") and psi is None:
        raise ValidationError(f"check {which!r} requires a weight psi")
    if which == "hyp" and b is None:
        raise ValidationError("check 'hyp' requires the interpolation exponent b")

    entries = _run_members(which, family.profiles(rule), p, b, psi,
                           rule, grid, eta_table, weak_grid)
    max_ratio = max(e.ratio for e in entries)

    delta = None
    if refine:
        rule2, grid2 = rule.refined(2), grid.refined(2)
        refined = _run_members(which, family.profiles(rule2), p, b, psi,
                               rule2, grid2, eta_table, weak_grid)
        max2 = max(e.ratio for e in refined)
        delta = abs(max2 - max_ratio) / max_ratio
    return RatioReport(which, float(p), None if b is None else float(b),
                       tuple(entries), float(max_ratio), delta)


def operator_norm_lower_bound(symbol: MultiplierSymbol, p: float, q: float,
                              family: TestFamily, rule: RadialRule,
                              grid: SpectralGrid,
                              eta_table: EtaTable | None = None) -> float:
    """Empirical lower bound for the L^p -> L^q multiplier operator
    norm: the largest ratio ``|T f|_q / |f|_p`` over the family.

    Any such ratio is a certified lower bound for the operator norm, to
    be read against the closed-form upper bound for the same symbol.
    """
    if not (1.0 < p <= 2.0 <= q < math.inf):
        raise ValidationError(f"exponents must satisfy 1 < p <= 2 <= q < inf, got ({p}, {q})")
    mat = multiplier_matrix(symbol, rule, grid, eta_table)
    best = 0.0
    for f in family.profiles(rule):
        image = f.with_values(mat @ f.values)
        best = max(best, image.lp_norm(q) / f.lp_norm(p))
    return best
