"""The group ``SL(2, R)``: element construction, one-parameter
subgroups, and the two factorisations everything else rests on.

Conventions (fixed once, used everywhere):

* rotations     ``k(theta) = [[cos t, sin t], [-sin t, cos t]]``
* dilations     ``a(t)     = [[e^t, 0], [0, e^-t]]``
* shears        ``u(v)     = [[1, v], [0, 1]]``

Triangular factorisation: every ``x`` is uniquely
``k(theta) a(t) u(v)`` with ``theta`` in ``[0, 2*pi)`` and real
``t, v``.  Polar factorisation: ``x = k(theta1) a(t) k(theta2)`` with
``t >= 0``; for ``t > 0`` it is unique once ``theta1`` is reduced
modulo ``pi`` (shifting ``theta1`` by ``pi`` and ``theta2`` by ``-pi``
gives the same element), and for ``t == 0`` the rotation is carried
entirely by ``theta1``.

The polar radial part is computed through the singular values of ``x``,
which is numerically stable for all matrix sizes of interest here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "GroupElement",
    "TriangularCoords",
    "PolarCoords",
    "rotation",
    "diag_flow",
    "shear",
    "identity",
    "iwasawa",
    "cartan",
]

_DET_TOL = 1e-8
_TWO_PI = 2.0 * math.pi


def _mod_two_pi(angle: float) -> float:
    """Reduce to ``[0, 2*pi)``, guarding against the result rounding
    up to ``2*pi`` itself."""
    a = angle % _TWO_PI
    return 0.0 if a >= _TWO_PI else a


@dataclass(frozen=True)
class TriangularCoords:
    """Coordinates of the rotation/dilation/shear factorisation."""

    theta: float
    t: float
    v: float


@dataclass(frozen=True)
class PolarCoords:
    """Coordinates of the rotation/dilation/rotation factorisation.

    ``t >= 0`` always; ``theta1`` lies in ``[0, pi)`` when ``t > 0``
    and carries the whole rotation (in ``[0, 2*pi)``) when ``t == 0``.
    """

    theta1: float
    t: float
    theta2: float


class GroupElement:
    """A unimodular real 2x2 matrix.

    Thin wrapper around a read-only ``numpy`` array; multiplication,
    inversion and the factorisations live here.  Construction validates
    ``det = 1`` to within ``1e-8``.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.shape != (2, 2):
            raise ValidationError(f"expected a 2x2 matrix, got shape {m.shape}")
        det = float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
        if not math.isfinite(det) or abs(det - 1.0) > _DET_TOL:
            raise ValidationError(f"matrix must have determinant 1, got {det!r}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    # -- algebra -------------------------------------------------------

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix)

    def inverse(self) -> "GroupElement":
        a, b = self.matrix[0]
        c, d = self.matrix[1]
        # the adjugate: exact up to rounding, no linear solve needed
        return GroupElement([[d, -b], [-c, a]])

    def transpose(self) -> "GroupElement":
        return GroupElement(self.matrix.T)

    def __repr__(self):
        a, b = self.matrix[0]
        c, d = self.matrix[1]
        return f"GroupElement([[{a:.6g}, {b:.6g}], [{c:.6g}, {d:.6g}]])"

    def __eq__(self, other):
        return isinstance(other, GroupElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    # -- factorisations (method forms; module functions do the work) ---

    def iwasawa(self) -> TriangularCoords:
        return iwasawa(self)

    def cartan(self) -> PolarCoords:
        return cartan(self)


# ----------------------------------------------------------------------
# one-parameter subgroups
# ----------------------------------------------------------------------

def rotation(theta: float) -> GroupElement:
    c, s = math.cos(theta), math.sin(theta)
    return GroupElement([[c, s], [-s, c]])


def diag_flow(t: float) -> GroupElement:
    e = math.exp(t)
    return GroupElement([[e, 0.0], [0.0, 1.0 / e]])


def shear(v: float) -> GroupElement:
    return GroupElement([[1.0, v], [0.0, 1.0]])


def identity() -> GroupElement:
    return GroupElement([[1.0, 0.0], [0.0, 1.0]])


# ----------------------------------------------------------------------
# factorisations
# ----------------------------------------------------------------------

def iwasawa(x: GroupElement) -> TriangularCoords:
    """Triangular coordinates ``(theta, t, v)`` of ``x``.

    With ``x = [[a, b], [c, d]]``: the first column has squared length
    ``a^2 + c^2 = e^{2t}``, the rotation angle satisfies
    ``e^{i*theta} = (a - i*c) / e^t``, and the shear parameter is
    ``v = (a*b + c*d) / (a^2 + c^2)``.
    """
    a, b = x.matrix[0]
    c, d = x.matrix[1]
    r2 = a * a + c * c
    t = 0.5 * math.log(r2)
    theta = _mod_two_pi(math.atan2(-c, a))
    v = (a * b + c * d) / r2
    return TriangularCoords(theta, t, v)


def _rotation_angle(u: np.ndarray) -> float:
    """Angle ``theta`` with ``k(theta) == u`` for ``u`` in ``SO(2)``."""
    return math.atan2(u[0, 1], u[0, 0])


def cartan(x: GroupElement, *, radial_tol: float = 1e-14) -> PolarCoords:
    """Polar coordinates ``(theta1, t, theta2)`` of ``x``.

    The radial part is ``t = log(sigma_1)`` with ``sigma_1`` the larger
    singular value.  When ``sigma_1 - 1 <= radial_tol`` the element is
    treated as a pure rotation: ``t = 0`` and ``theta2 = 0``.
    """
    m = x.matrix
    u, s, vt = np.linalg.svd(m)
    # both orthogonal factors must be rotations; their determinants agree
    # because det(x) = 1, so a single simultaneous sign flip suffices.
    if np.linalg.det(u) < 0.0:
        u = u @ np.diag([1.0, -1.0])
        vt = np.diag([1.0, -1.0]) @ vt
    t = math.log(s[0])
    if s[0] - 1.0 <= radial_tol:
        return PolarCoords(iwasawa(x).theta, 0.0, 0.0)
    theta1 = _rotation_angle(u)
    theta2 = _rotation_angle(vt)
    # reduce theta1 to [0, pi): k(theta1) a k(theta2) = k(theta1 - pi) a k(theta2 + pi)
    theta1 = _mod_two_pi(theta1)
    if theta1 >= math.pi:
        theta1 -= math.pi
        theta2 += math.pi
    return PolarCoords(theta1, t, _mod_two_pi(theta2))
