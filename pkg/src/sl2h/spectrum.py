"""Spectral-side data: type pairs, parity classes, the discrete index
set, and the Plancherel density.

A *type pair* ``(l, n)`` labels functions that transform under the
rotation subgroup by ``exp(i*l*theta)`` on the left and
``exp(i*n*theta)`` on the right.  Both integers must share parity; the
common parity selects one of two principal series and with it the
density ``mu``:

* even:  ``mu(lambda) = (pi*lambda/2) * tanh(pi*lambda/2)``
* odd:   ``mu(lambda) = (pi*lambda/2) * coth(pi*lambda/2)``

Besides the continuous series, a pair ``(l, n)`` sees finitely many
discrete components, indexed by the integers *strictly between* 0 and
both ``l`` and ``n`` and of the *opposite* parity.  This set is empty
unless ``l`` and ``n`` are nonzero and share a sign.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .quadrature import SpectralGrid

__all__ = [
    "Parity",
    "TypePair",
    "gamma_set",
    "plancherel_density",
    "spectral_measure_integral",
    "weak_sup_norm",
]


class Parity(enum.Enum):
    """Parity class of a type pair; selects the principal-series branch."""

    EVEN = "plus"
    ODD = "minus"

    @classmethod
    def parse(cls, text: str) -> "Parity":
        t = str(text).strip().lower()
        if t in ("plus", "+", "even"):
            return cls.EVEN
        if t in ("minus", "-", "odd"):
            return cls.ODD
        raise ValidationError(f"unknown parity class {text!r}")


@dataclass(frozen=True, order=True)
class TypePair:
    """A pair of rotation weights ``(l, n)`` of common parity."""

    l: int
    n: int

    def __post_init__(self):
        if not isinstance(self.l, int) or not isinstance(self.n, int):
            raise ValidationError(f"rotation weights must be integers, got ({self.l}, {self.n})")
        if (self.l - self.n) % 2 != 0:
            raise ValidationError(
                f"rotation weights must share parity, got ({self.l}, {self.n})")

    @property
    def tau(self) -> Parity:
        return Parity.EVEN if self.l % 2 == 0 else Parity.ODD

    @property
    def is_spherical(self) -> bool:
        return self.l == 0 and self.n == 0

    def swapped(self) -> "TypePair":
        return TypePair(self.n, self.l)

    def gamma(self) -> tuple[int, ...]:
        return gamma_set(self.l, self.n)


def gamma_set(l: int, n: int) -> tuple[int, ...]:
    """Discrete index set of the pair ``(l, n)``.

    Integers of parity opposite to ``l`` lying strictly between zero and
    both weights: ``0 < k < min(l, n)`` when both are positive,
    ``max(l, n) < k < 0`` when both are negative, empty otherwise.
    """
    if (l - n) % 2 != 0:
        raise ValidationError(f"rotation weights must share parity, got ({l}, {n})")
    lo, hi = min(l, n), max(l, n)
    if lo > 0:
        ks = range(1, lo)
    elif hi < 0:
        ks = range(hi + 1, 0)
    else:
        return ()
    want = (l + 1) % 2
    return tuple(k for k in ks if abs(k) % 2 == want)


# ----------------------------------------------------------------------
# Plancherel density
# ----------------------------------------------------------------------

def plancherel_density(tau: Parity, lam) -> np.ndarray:
    """Density of the continuous spectral measure at real ``lam``.

    Even class: ``(pi*lam/2)*tanh(pi*lam/2)`` (vanishes quadratically
    at 0); odd class: ``(pi*lam/2)*coth(pi*lam/2)`` (equals 1 at 0).
    Both grow like ``pi*|lam|/2`` at infinity.
    """
    lam = np.asarray(lam, dtype=float)
    x = 0.5 * np.pi * lam
    if tau is Parity.EVEN:
        out = x * np.tanh(x)
    else:
        # x*coth(x): even, analytic; series near 0 avoids 0/0.
        out = np.where(np.abs(x) < 1e-3,
                       1.0 + x * x / 3.0 - x ** 4 / 45.0,
                       x / np.tanh(np.where(np.abs(x) < 1e-3, 1.0, x)))
    return out if out.shape else float(out)


def spectral_measure_integral(values, tau: Parity, grid: SpectralGrid):
    """Integral of sampled values against the continuous spectral
    measure ``mu(tau, lambda) d(lambda)`` over the grid."""
    values = np.asarray(values)
    if values.shape[-1] != grid.node_count:
        raise ValidationError(
            f"sample count {values.shape[-1]} does not match grid ({grid.node_count})")
    return values @ (plancherel_density(tau, grid.samples) * grid.weights)


def weak_sup_norm(psi, tau: Parity, grid: SpectralGrid, exponent: float,
                  *, widenings: int = 2, growth_tol: float = 0.05) -> float:
    """``sup_alpha  alpha * mu(|psi| > alpha)**exponent`` over the
    continuous spectral measure.

    ``psi`` is a callable evaluated on ``grid.samples``.  On a discrete
    grid the supremum is attained at one of the sampled values, so it is
    computed exactly (in particular it scales *exactly* linearly when
    ``psi`` is scaled by a constant).

    The level sets of an unbounded-at-infinity symbol have infinite
    measure, which a truncated grid cannot see; the norm is therefore
    re-evaluated on ``widenings`` successively doubled grids, and if it
    keeps growing by more than ``growth_tol`` (relative) each time,
    ``inf`` is returned.

    ``exponent = 0`` is the degenerate limit: the norm collapses to the
    essential supremum of ``|psi|``.
    """
    if exponent < 0:
        raise ValidationError(f"exponent must be nonnegative, got {exponent}")

    def on(g: SpectralGrid) -> float:
        v = np.abs(np.asarray(psi(g.samples), dtype=complex))
        if not np.all(np.isfinite(v)):
            return math.inf
        if exponent == 0.0:
            return float(np.max(v))
        mu_w = plancherel_density(tau, g.samples) * g.weights
        order = np.argsort(v)[::-1]
        v_sorted = v[order]
        mass = np.cumsum(mu_w[order])
        keep = v_sorted > 0
        if not np.any(keep):
            return 0.0
        return float(np.max(v_sorted[keep] * mass[keep] ** exponent))

    value = on(grid)
    g = grid
    for _ in range(max(0, widenings)):
        if not math.isfinite(value):
            return math.inf
        g = g.widened(2.0)
        wider = on(g)
        if wider <= value * (1.0 + growth_tol):
            return max(value, wider)
        value = wider
    return math.inf
