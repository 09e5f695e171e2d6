"""Tabulate spherical functions and check their basic identities.

A spherical function of type (l, n) is determined by its restriction to
the diagonal subgroup; the evaluator integrates a rotation-kernel over
one period with panels matched to the local oscillation.  Three sanity
checks run below: the value delta_{l,n} at the identity, the classical
(1+t) e^{-t} envelope of the elementary case, and the decay of a
discrete-point value against its known exponential rate.
"""

import numpy as np

from sl2h import TypePair
from sl2h.spherical import phi_elementary, phi_radial

print("Values at the identity: phi(e) = 1 when l = n, 0 otherwise")
print("----------------------------------------------------------")
worst = 0.0
for l in range(-4, 5):
    for n in range(-4, 5):
        if (l - n) % 2:
            continue  # types exist only for weights of equal parity
        vals = phi_radial(TypePair(l, n), [0.0, 1.0, 5.0, 1j], [0.0])[:, 0]
        target = 1.0 if l == n else 0.0
        worst = max(worst, float(np.max(np.abs(vals - target))))
print("worst deviation over 41 pairs x 4 spectral values:", worst)

print()
print("The elementary spherical function and its envelope")
print("--------------------------------------------------")
ts = np.linspace(0.0, 20.0, 9)
vals = phi_elementary([0.0], ts)[0].real
print(f"{'t':>5} {'phi(t)':>14} {'phi / ((1+t)e^-t)':>18}")
for t, v in zip(ts, vals):
    envelope = (1.0 + t) * np.exp(-t)
    print(f"{t:5.1f} {v:14.6e} {v / envelope:18.6f}")
fine = np.linspace(0.0, 20.0, 401)
ratio = phi_elementary([0.0], fine)[0].real / ((1.0 + fine) * np.exp(-fine))
print(f"band over [0, 20]: [{ratio.min():.6f}, {ratio.max():.6f}]")

print()
print("Oscillation in lambda at fixed radius")
print("-------------------------------------")
lams = np.array([0.0, 1.0, 2.0, 5.0, 10.0])
row = phi_radial(TypePair(2, 2), lams, [1.5])[:, 0]
for lam, v in zip(lams, row):
    print(f"lambda = {lam:5.1f}: phi = {v.real:+.6f} {v.imag:+.6f}i")

print()
print("Discrete spectral points decay exponentially")
print("--------------------------------------------")
# at lambda = i*m the value falls off like exp(-(m+1) t); the fitted
# slope over moderate t should match -(m+1).
pair, m = TypePair(4, 4), 3
ts = np.linspace(2.0, 5.0, 7)
vals = np.abs(phi_radial(pair, [1j * m], ts)[0])
slope = np.polyfit(ts, np.log(vals), 1)[0]
print(f"pair (4,4), lambda = {m}i: fitted log-slope {slope:.4f} "
      f"(expected {-(m + 1)})")
