"""Radial profiles of matrix-type functions.

A function of type ``(l, n)`` is determined by its restriction to the
dilation subgroup: ``f(k(t1) a(t) k(t2)) = exp(i*l*t1) f(a(t)) exp(i*n*t2)``.
A :class:`RadialProfile` stores that restriction sampled on a
:class:`~sl2h.quadrature.RadialRule`, optionally remembering the exact
callable it came from so that re-sampling loses no accuracy.

The workhorse test inputs are smooth compactly supported bumps

    ``b(t) = amplitude * exp(1 - 1/(1 - s^2)) * exp(i*omega*t)``,
    ``s = (t - center) / width``,

supported on ``[center - width, center + width]``.  Their spectral
transforms decay root-exponentially, fast enough that moderate spectral
windows capture them to high accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ValidationError
from .group import GroupElement, cartan
from .quadrature import RadialRule, integrate_radial, radial_weight
from .spectrum import TypePair

__all__ = ["RadialProfile", "bump_profile"]


@dataclass(frozen=True)
class RadialProfile:
    """Samples of a type-``(l, n)`` function along the dilation subgroup.

    ``values[i] = f(a(rule.nodes[i]))``; complex-valued.  If the profile
    was built from a closed-form radial function, ``radial_fn`` holds it
    and off-node evaluation is exact; otherwise a cubic spline through
    the samples is used.
    """

    pair: TypePair
    rule: RadialRule
    values: np.ndarray
    radial_fn: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=complex)
        if v.shape != (self.rule.nodes.size,):
            raise ValidationError(
                f"values shape {v.shape} does not match rule "
                f"({self.rule.nodes.size} nodes)")
        if not np.all(np.isfinite(v.view(float))):
            raise ValidationError("profile values must be finite")
        if v is self.values:
            v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_function(cls, pair: TypePair, rule: RadialRule, fn: Callable) -> "RadialProfile":
        return cls(pair, rule, np.asarray(fn(rule.nodes), dtype=complex), radial_fn=fn)

    @classmethod
    def from_samples(cls, pair: TypePair, ts, values, rule: RadialRule) -> "RadialProfile":
        """Build a profile from samples on an arbitrary increasing grid,
        re-interpolated onto ``rule`` (cubic spline, zero outside the
        sampled range)."""
        ts = np.asarray(ts, dtype=float)
        values = np.asarray(values, dtype=complex)
        if ts.ndim != 1 or ts.size != values.size or ts.size < 4:
            raise ValidationError("need >= 4 matching (t, value) samples")
        if np.any(np.diff(ts) <= 0):
            raise ValidationError("sample abscissae must be strictly increasing")
        if np.array_equal(ts, rule.nodes):
            return cls(pair, rule, values)
        spline = CubicSpline(ts, values)
        out = spline(rule.nodes)
        out[(rule.nodes < ts[0] - 1e-12) | (rule.nodes > ts[-1] + 1e-12)] = 0.0
        return cls(pair, rule, out)

    # -- evaluation ------------------------------------------------------

    def evaluate_radial(self, ts) -> np.ndarray:
        """Profile values at arbitrary ``t >= 0`` (exact if the closed
        form is known, spline-interpolated otherwise; zero beyond
        ``t_max``)."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if self.radial_fn is not None:
            out = np.asarray(self.radial_fn(ts), dtype=complex)
        else:
            spline = CubicSpline(self.rule.nodes, self.values)
            out = np.asarray(spline(ts), dtype=complex)
        out = np.where((ts < 0) | (ts > self.rule.t_max), 0.0, out)
        return out

    def resampled(self, rule: RadialRule) -> "RadialProfile":
        """The same profile on a different radial rule (exact when the
        closed form is known, spline-interpolated otherwise)."""
        if rule == self.rule:
            return self
        return RadialProfile(self.pair, rule, self.evaluate_radial(rule.nodes),
                             radial_fn=self.radial_fn)

    def evaluate_group(self, x: GroupElement) -> complex:
        """Value at a general group element via its polar coordinates and
        the type rule."""
        pc = cartan(x)
        radial = self.evaluate_radial(np.array([pc.t]))[0]
        return complex(np.exp(1j * (self.pair.l * pc.theta1 + self.pair.n * pc.theta2)) * radial)

    # -- norms and arithmetic ---------------------------------------------

    def lp_norm(self, p: float) -> float:
        """``L^p`` norm with respect to Haar measure (polar radial
        density, unit-mass rotation factors)."""
        if p == np.inf:
            return float(np.max(np.abs(self.values)))
        if not (p >= 1.0):
            raise ValidationError(f"exponent must satisfy p >= 1, got {p}")
        return float(integrate_radial(np.abs(self.values) ** p, self.rule) ** (1.0 / p))

    def with_values(self, values) -> "RadialProfile":
        return replace(self, values=np.asarray(values, dtype=complex), radial_fn=None)

    def scaled(self, c) -> "RadialProfile":
        fn = None
        if self.radial_fn is not None:
            base = self.radial_fn
            fn = lambda ts, _b=base, _c=c: _c * np.asarray(_b(ts))
        return RadialProfile(self.pair, self.rule, c * self.values, radial_fn=fn)


def bump_profile(pair: TypePair, rule: RadialRule, center: float, width: float,
                 omega: float = 0.0, amplitude: complex = 1.0) -> RadialProfile:
    """Smooth compactly supported bump, optionally radially modulated.

    The support ``[center - width, center + width]`` must lie strictly
    inside ``(0, t_max)``.
    """
    if not (width > 0):
        raise ValidationError(f"width must be positive, got {width}")
    if center - width <= 0 or center + width >= rule.t_max:
        raise ValidationError(
            f"bump support [{center - width}, {center + width}] must lie inside "
            f"(0, {rule.t_max})")

    def fn(ts, c=float(center), w=float(width), om=float(omega), amp=complex(amplitude)):
        ts = np.asarray(ts, dtype=float)
        s = (ts - c) / w
        out = np.zeros(ts.shape, dtype=complex)
        inside = np.abs(s) < 1.0
        si = s[inside]
        out[inside] = amp * np.exp(1.0 - 1.0 / (1.0 - si * si))
        if om != 0.0:
            out[inside] *= np.exp(1j * om * ts[inside])
        return out

    return RadialProfile.from_function(pair, rule, fn)
