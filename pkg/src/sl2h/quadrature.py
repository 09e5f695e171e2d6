"""Quadrature rules for the three one-dimensional domains the package
integrates over.

*   the rotation circle (angle in ``[0, 2*pi)``) -- equispaced nodes,
    which are spectrally accurate for smooth periodic integrands;
*   the radial half-line (``t >= 0``, truncated at ``t_max``) --
    composite Gauss-Legendre panels of unit length, so the per-panel
    resolution is uniform in ``t``;
*   the spectral line (``lambda`` in ``[-lambda_max, lambda_max]``) --
    a symmetric trapezoid grid with an odd node count, so that
    ``lambda = 0`` is always a node and the grid is exactly symmetric
    under ``lambda -> -lambda``.

All three rules are immutable value objects.  Their ``key`` property is
a hashable fingerprint used by the kernel cache: two rules with equal
keys have bit-identical nodes and weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = [
    "PeriodicRule",
    "RadialRule",
    "SpectralGrid",
    "integrate_periodic",
    "integrate_radial",
    "radial_weight",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


# ----------------------------------------------------------------------
# circle
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicRule:
    """Equispaced rule on the circle, normalised to total mass one.

    For a trigonometric polynomial of degree ``< node_count`` the rule
    is exact; for smooth integrands the error decays faster than any
    power of ``1/node_count``.
    """

    node_count: int = 256
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.node_count < 4:
            raise ValidationError(f"periodic rule needs >= 4 nodes, got {self.node_count}")
        n = self.node_count
        object.__setattr__(self, "nodes", _readonly(np.arange(n) * (2.0 * np.pi / n)))
        object.__setattr__(self, "weights", _readonly(np.full(n, 1.0 / n)))

    @property
    def key(self):
        return ("periodic", self.node_count)

    def refined(self, factor: int = 2) -> "PeriodicRule":
        return PeriodicRule(self.node_count * factor)


def integrate_periodic(values: np.ndarray, rule: PeriodicRule):
    """Normalised integral over the circle (total mass 1) of sampled
    values ``values[i] = f(rule.nodes[i])``."""
    values = np.asarray(values)
    if values.shape[-1] != rule.node_count:
        raise ValidationError(
            f"sample count {values.shape[-1]} does not match rule ({rule.node_count})")
    return values @ rule.weights


# ----------------------------------------------------------------------
# radial half-line
# ----------------------------------------------------------------------

def radial_weight(t: np.ndarray) -> np.ndarray:
    """Radial density ``2*sinh(2t)`` of the polar decomposition of Haar
    measure (rotation factors carry mass one each)."""
    return 2.0 * np.sinh(2.0 * np.asarray(t, dtype=float))


@dataclass(frozen=True)
class RadialRule:
    """Composite Gauss-Legendre rule on ``[0, t_max]``.

    The interval is cut into panels of length one (a final short panel
    absorbs any remainder), each carrying ``points_per_panel`` Gauss
    nodes.  Unit panels keep the resolution uniform: oscillatory factors
    ``exp(i*lambda*t)`` are integrated accurately as long as
    ``points_per_panel`` comfortably exceeds ``lambda / 2`` or so, at
    any distance from the origin.
    """

    t_max: float = 8.0
    points_per_panel: int = 64
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.t_max > 0.0) or not math.isfinite(self.t_max):
            raise ValidationError(f"t_max must be positive and finite, got {self.t_max}")
        if self.points_per_panel < 2:
            raise ValidationError("points_per_panel must be >= 2")
        edges = list(np.arange(0.0, self.t_max, 1.0))
        edges.append(float(self.t_max))
        if len(edges) >= 3 and edges[-1] - edges[-2] < 1e-12:
            del edges[-2]
        x, w = np.polynomial.legendre.leggauss(self.points_per_panel)
        nodes, weights = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            nodes.append(mid + half * x)
            weights.append(half * w)
        object.__setattr__(self, "nodes", _readonly(np.concatenate(nodes)))
        object.__setattr__(self, "weights", _readonly(np.concatenate(weights)))

    @property
    def key(self):
        return ("radial", round(self.t_max, 12), self.points_per_panel)

    def refined(self, factor: int = 2) -> "RadialRule":
        """Same interval, ``factor`` times as many nodes per panel."""
        return RadialRule(self.t_max, self.points_per_panel * factor)


def integrate_radial(values: np.ndarray, rule: RadialRule, weight: str | None = "haar"):
    """Integrate sampled values over ``[0, t_max]``.

    ``weight="haar"`` (the default) inserts the radial density
    ``2*sinh(2t)``; ``weight=None`` integrates against ``dt`` alone.
    """
    values = np.asarray(values)
    if values.shape[-1] != rule.nodes.size:
        raise ValidationError(
            f"sample count {values.shape[-1]} does not match rule ({rule.nodes.size})")
    w = rule.weights
    if weight == "haar":
        w = w * radial_weight(rule.nodes)
    elif weight is not None:
        raise ValidationError(f"unknown weight {weight!r}")
    return values @ w


# ----------------------------------------------------------------------
# spectral line
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralGrid:
    """Symmetric trapezoid grid on ``[-lambda_max, lambda_max]``.

    ``node_count`` must be odd so the grid contains 0 and is exactly
    mirror-symmetric.  Endpoint trapezoid weights are halved as usual.
    """

    lambda_max: float = 60.0
    node_count: int = 4097
    samples: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.lambda_max > 0.0) or not math.isfinite(self.lambda_max):
            raise ValidationError(f"lambda_max must be positive, got {self.lambda_max}")
        if self.node_count < 3 or self.node_count % 2 == 0:
            raise ValidationError(
                f"node_count must be odd and >= 3, got {self.node_count}")
        lam = np.linspace(-self.lambda_max, self.lambda_max, self.node_count)
        lam[(self.node_count - 1) // 2] = 0.0  # exact zero at the centre
        h = 2.0 * self.lambda_max / (self.node_count - 1)
        w = np.full(self.node_count, h)
        w[0] = w[-1] = 0.5 * h
        object.__setattr__(self, "samples", _readonly(lam))
        object.__setattr__(self, "weights", _readonly(w))

    @property
    def spacing(self) -> float:
        return 2.0 * self.lambda_max / (self.node_count - 1)

    @property
    def key(self):
        return ("spectral", round(self.lambda_max, 12), self.node_count)

    def refined(self, factor: int = 2) -> "SpectralGrid":
        """Same interval, spacing divided by ``factor``."""
        return SpectralGrid(self.lambda_max, factor * (self.node_count - 1) + 1)

    def widened(self, factor: float = 2.0) -> "SpectralGrid":
        """Interval stretched by ``factor`` at (almost) unchanged spacing."""
        new_max = self.lambda_max * factor
        n = int(round(new_max / self.spacing))
        return SpectralGrid(new_max, 2 * n + 1)
