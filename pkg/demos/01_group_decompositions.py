"""Factor unimodular 2x2 matrices and weigh the radial coordinate.

Every element of the group splits two ways: into rotation * diagonal
flow * shear (the triangular factorisation, unique angles modulo 2 pi)
and into rotation * diagonal flow * rotation (the polar factorisation,
with a nonnegative radial part).  Integration over the group reduces to
a one-dimensional integral against the radial density 2 sinh(2t).
"""

import numpy as np

from sl2h import GroupElement, RadialRule
from sl2h.group import diag_flow, rotation, shear
from sl2h.quadrature import integrate_radial, radial_weight

rng = np.random.default_rng(7)


def random_element():
    a, b, c = rng.normal(0.0, 1.5, 3)
    while abs(a) < 1e-3:
        a = rng.normal(0.0, 1.5)
    return GroupElement([[a, b], [c, (1.0 + b * c) / a]])


print("A generic element and its two factorisations")
print("--------------------------------------------")
g = random_element()
print("g =", g)

tri = g.iwasawa()
print(f"triangular: theta = {tri.theta:.6f}, t = {tri.t:.6f}, v = {tri.v:.6f}")
recon = rotation(tri.theta) @ diag_flow(tri.t) @ shear(tri.v)
print("   reconstruction error:", np.max(np.abs(recon.matrix - g.matrix)))

pol = g.cartan()
print(f"polar:      theta1 = {pol.theta1:.6f}, t = {pol.t:.6f}, "
      f"theta2 = {pol.theta2:.6f}")
recon = rotation(pol.theta1) @ diag_flow(pol.t) @ rotation(pol.theta2)
print("   reconstruction error:", np.max(np.abs(recon.matrix - g.matrix)))

print()
print("Worst reconstruction error over 2000 random elements")
print("-----------------------------------------------------")
worst_tri = worst_pol = 0.0
for _ in range(2000):
    g = random_element()
    tri, pol = g.iwasawa(), g.cartan()
    r1 = rotation(tri.theta) @ diag_flow(tri.t) @ shear(tri.v)
    r2 = rotation(pol.theta1) @ diag_flow(pol.t) @ rotation(pol.theta2)
    worst_tri = max(worst_tri, float(np.max(np.abs(r1.matrix - g.matrix))))
    worst_pol = max(worst_pol, float(np.max(np.abs(r2.matrix - g.matrix))))
print("triangular:", worst_tri)
print("polar:     ", worst_pol)

print()
print("The radial density integrates like the group itself")
print("----------------------------------------------------")
# mass of the radial ball t <= R is the integral of 2 sinh(2t),
# which is cosh(2R) - 1; compare quadrature against the closed form.
for R in (0.5, 2.0, 5.0):
    rule = RadialRule(R, 32)
    numeric = float(integrate_radial(np.ones(rule.nodes.size), rule))
    closed = float(np.cosh(2.0 * R) - 1.0)
    print(f"ball radius {R}: quadrature {numeric:.10e}   "
          f"closed form {closed:.10e}   rel err "
          f"{abs(numeric - closed) / closed:.2e}")

print()
print(f"density at t = 1: {radial_weight(1.0):.12f}  (equals 2 sinh 2 = "
      f"{2.0 * np.sinh(2.0):.12f})")
