"""Acceptance gate: the library's headline numerical guarantees.

Each test covers one criterion, prints exactly one ``[PASS]``/``[FAIL]``
line, and fails with the list of violated sub-checks.  Everything runs
at the session's base resolution (radial rule (8, 64), spectral grid
(60, 1025)) unless a criterion explicitly compares resolutions.
"""

import math

import numpy as np
from scipy.optimize import minimize_scalar

from sl2h import (
    RadialRule,
    SpectralGrid,
    TypePair,
    bump_profile,
    forward,
    inverse,
    plancherel_check,
)
from sl2h.calibration import reference_profiles
from sl2h.group import GroupElement, diag_flow, rotation, shear
from sl2h.inequalities import (
    default_family,
    dual_hausdorff_young_check,
    family_check,
    hausdorff_young_check,
    hyp_check,
    paley_check,
)
from sl2h.multiplier import (
    apply_fourier_multiplier,
    compose_symbols,
    constant_symbol,
    gaussian_power_sup,
    heat_bound,
    heat_symbol,
    identity_symbol,
    multiplier_norm_bound,
    rational_symbol,
    sobolev_symbol,
)
from sl2h.pde import (
    constant_forcing,
    global_smallness_check,
    heat_existence_time,
    linear_heat_solve,
    nonlinear_heat_solve,
    nonlinear_wave_solve,
    wave_existence_time,
)
from sl2h.spectrum import Parity, weak_sup_norm
from sl2h.spherical import phi_elementary, phi_radial

P00 = TypePair(0, 0)


def report(num: int, label: str, checks: dict) -> None:
    ok = all(checks.values())
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {label}")
    failed = [name for name, good in checks.items() if not good]
    assert ok, f"criterion {num} ({label}) violated: {failed}"


def test_c01_decomposition_roundtrips():
    rng = np.random.default_rng(20260815)
    iw_err = ca_err = 0.0
    for _ in range(10_000):
        a, b, c = rng.normal(0.0, 1.5, 3)
        while abs(a) < 1e-3:
            a = rng.normal(0.0, 1.5)
        g = GroupElement([[a, b], [c, (1.0 + b * c) / a]])
        tri = g.iwasawa()
        rec = rotation(tri.theta) @ diag_flow(tri.t) @ shear(tri.v)
        iw_err = max(iw_err, float(np.max(np.abs(rec.matrix - g.matrix))))
        pol = g.cartan()
        rec = rotation(pol.theta1) @ diag_flow(pol.t) @ rotation(pol.theta2)
        ca_err = max(ca_err, float(np.max(np.abs(rec.matrix - g.matrix))))
    report(1, "decomposition roundtrips on 10^4 random elements", {
        f"iwasawa max err {iw_err:.2e} < 1e-12": iw_err < 1e-12,
        f"cartan max err {ca_err:.2e} < 1e-10": ca_err < 1e-10,
    })


def test_c02_spherical_identity_values():
    worst = 0.0
    for l in range(-4, 5):
        for n in range(-4, 5):
            if (l - n) % 2:
                continue
            vals = phi_radial(TypePair(l, n), [0.0, 1.0, 5.0, 1j], [0.0])[:, 0]
            target = 1.0 if l == n else 0.0
            worst = max(worst, float(np.max(np.abs(vals - target))))
    report(2, "spherical functions at the identity equal delta_{l,n}", {
        f"max deviation {worst:.2e} < 1e-13": worst < 1e-13,
    })


def test_c03_ground_spherical_envelope():
    ts = np.linspace(0.0, 20.0, 401)
    ratio = phi_elementary([0.0], ts)[0].real / ((1.0 + ts) * np.exp(-ts))
    c1, c2 = float(ratio.min()), float(ratio.max())
    report(3, "elementary spherical function sits in the (1+t)e^-t band", {
        f"lower constant {c1:.4f} > 0": c1 > 0.0,
        f"band width {c2 / c1:.4f} < 3": c2 / c1 < 3.0,
    })


def test_c04_plancherel_identity(base_rule, base_grid, base_eta):
    checks = {}
    for spec in ((2.0, 1.0, 0.0), (3.0, 1.5, 2.0), (2.5, 0.8, 5.0),
                 (1.5, 1.2, 1.0), (1.5, 0.8, 3.0)):
        f = bump_profile(P00, base_rule, *spec[:2], omega=spec[2])
        err = plancherel_check(f, base_grid).rel_err
        checks[f"(0,0) bump {spec} rel err {err:.2e} < 1e-6"] = err < 1e-6
    for pair in (TypePair(2, 2), TypePair(4, 4)):
        for spec in ((2.0, 1.0, 0.0), (2.5, 0.8, 2.0)):
            f = bump_profile(pair, base_rule, *spec[:2], omega=spec[2])
            err = plancherel_check(f, base_grid, base_eta).rel_err
            checks[f"({pair.l},{pair.n}) bump {spec} rel err {err:.2e} "
                   "< 1e-4"] = err < 1e-4
    for (l, n, m, eta, tol) in base_eta.entries():
        checks[f"eta({l},{n};{m}) cross-profile spread {tol / eta:.2e} "
               "< 1e-6"] = tol / eta < 1e-6
    report(4, "energy identity with one shared calibration", checks)


def test_c05_inversion_roundtrip(base_rule, base_grid):
    doubled = SpectralGrid(2.0 * base_grid.lambda_max,
                           2 * base_grid.node_count - 1)
    checks = {}
    for i, prof in enumerate(reference_profiles(P00, base_rule)):
        scale = float(np.max(np.abs(prof.values)))
        errs = {}
        for grid in (base_grid, doubled):
            rec = inverse(forward(prof, grid), base_rule)
            errs[grid.lambda_max] = float(
                np.max(np.abs(rec.values - prof.values)) / scale)
        coarse, fine = errs[base_grid.lambda_max], errs[doubled.lambda_max]
        checks[f"bump {i} sup-rel err {fine:.2e} < 1e-4"] = fine < 1e-4
        checks[f"bump {i} doubling decreases {coarse:.2e} -> "
               f"{fine:.2e}"] = fine < coarse
    report(5, "inversion roundtrip on reference bumps", checks)


def test_c06_hausdorff_young_pinning(base_rule, base_grid):
    f = bump_profile(P00, base_rule, 2.0, 1.0)
    hy2 = hausdorff_young_check(f, 2.0, base_grid).ratio
    dual2 = dual_hausdorff_young_check(forward(f, base_grid), base_rule,
                                       2.0).ratio
    checks = {
        f"p=2 ratio deviates {abs(hy2 - 1.0):.2e} < 1e-6":
            abs(hy2 - 1.0) < 1e-6,
        f"dual p=2 ratio deviates {abs(dual2 - 1.0):.2e} < 1e-6":
            abs(dual2 - 1.0) < 1e-6,
    }
    family = default_family(P00, 6)
    for p in (1.0, 1.25, 1.5):
        rep = family_check("hy", family, p, rule=base_rule, grid=base_grid,
                           refine=True)
        drift = rep.refinement_delta / rep.max_ratio
        checks[f"p={p} max ratio {rep.max_ratio:.4f} <= 1"] = \
            rep.max_ratio <= 1.0 + 1e-9
        checks[f"p={p} refinement drift {drift:.2e} < 1%"] = drift < 0.01
    report(6, "transform-norm ratios pinned at p=2, stable below", checks)


def test_c07_paley_and_interpolation_collapse(base_rule, base_grid):
    f = bump_profile(P00, base_rule, 2.0, 1.0)
    psi = rational_symbol(P00, 1.0)
    p = 1.5
    pp = p / (p - 1.0)
    at_p = abs(hyp_check(f, psi, p, p, base_grid).ratio
               - paley_check(f, psi, p, base_grid).ratio)
    at_pp = abs(hyp_check(f, psi, p, pp, base_grid).ratio
                - hausdorff_young_check(f, p, base_grid).ratio)
    report(7, "interpolated check collapses to its endpoints", {
        f"b=p matches weighted check to {at_p:.2e} < 1e-10": at_p < 1e-10,
        f"b=p' matches transform-norm check to {at_pp:.2e} < 1e-10":
            at_pp < 1e-10,
    })


def test_c08_weak_norm_and_bound_homogeneity():
    wgrid = SpectralGrid(200.0, 8001)
    base_fn = lambda lam: 1.0 / (1.0 + np.abs(lam) ** 2)
    w1 = weak_sup_norm(base_fn, Parity.EVEN, wgrid, 0.75)
    m = heat_symbol(P00, 1.0)
    b1 = float(multiplier_norm_bound(m, 1.5, 3.0))
    checks = {}
    for c in (0.1, 3.0, 100.0):
        wc = weak_sup_norm(lambda lam: c * base_fn(lam), Parity.EVEN,
                           wgrid, 0.75)
        dev = abs(wc - c * w1) / (c * w1)
        checks[f"weak norm scales by {c}: rel dev {dev:.2e} < 1e-10"] = \
            dev < 1e-10
        bc = float(multiplier_norm_bound(
            compose_symbols(constant_symbol(P00, c), m), 1.5, 3.0))
        dev = abs(bc - c * b1) / (c * b1)
        checks[f"norm bound scales by {c}: rel dev {dev:.2e} < 1e-10"] = \
            dev < 1e-10
    report(8, "degree-1 homogeneity of weak norm and operator bound", checks)


def test_c09_gaussian_power_supremum():
    worst = 0.0
    for alpha in (0.5, 1.0, 2.0, 4.0, 8.0):
        for r in (0.5, 1.0, 2.0, 3.0, 5.0):
            for t in (0.1, 0.5, 1.0, 2.0, 10.0):
                closed = gaussian_power_sup(t, alpha, r)
                xstar = math.sqrt(alpha / (2.0 * r * t))
                res = minimize_scalar(
                    lambda x: -math.exp(-t * x * x) * x ** (alpha / r),
                    bounds=(xstar / 8.0, xstar * 8.0), method="bounded",
                    options={"xatol": 1e-12})
                worst = max(worst, abs(-res.fun - closed) / closed)
    spot = abs(gaussian_power_sup(1.0, 2.0, 2.0) - 0.42888)
    report(9, "closed-form supremum of exp(-t x^2) x^(a/r)", {
        f"5x5x5 grid worst rel dev {worst:.2e} < 1e-8": worst < 1e-8,
        f"spot value dev {spot:.2e} < 1e-5": spot < 1e-5,
    })


def test_c10_heat_bound_exponents():
    checks = {}
    for (p, q) in ((2.0, 4.0), (1.5, 3.0)):
        gamma = 1.0 / p - 1.0 / q
        ts = np.geomspace(1e-4, 1e-1, 25)
        vals = np.array([float(heat_bound(t, p, q, P00)) for t in ts])
        slope = np.polyfit(np.log(ts), np.log(vals), 1)[0]
        dev = abs(slope + gamma) / gamma
        checks[f"({p},{q}) small-time slope {slope:.4f} = "
               f"-{gamma:.4f} +- 2%"] = dev < 0.02
        ts = np.linspace(5.0, 50.0, 25)
        prod = np.array([float(heat_bound(t, p, q, P00))
                         * math.exp(t / 4.0) * t ** (1.5 * gamma)
                         for t in ts])
        band = prod.max() / prod.min() - 1.0
        checks[f"({p},{q}) large-time compensated bound flat to "
               f"{band:.2e} < 5%"] = band < 0.05
    report(10, "heat-bound time exponents in both regimes", checks)


def test_c11_discrete_heat_growth(base_rule, base_grid, base_eta):
    pair = TypePair(4, 4)
    u0 = bump_profile(pair, base_rule, 2.0, 1.0)
    coeff = abs(forward(u0, base_grid, base_eta).hat_B[3])
    times = np.linspace(5.0, 15.0, 11)
    state = linear_heat_solve(u0, times, base_grid, base_eta)
    norms = np.array([s.lp_norm(2) for s in state.snapshots])
    slope = float(np.polyfit(times, np.log(norms), 1)[0])
    report(11, "discrete spectrum drives e^{2t} heat growth on (4,4)", {
        f"datum has discrete mass {coeff:.3f} > 0.01 at m=3": coeff > 0.01,
        f"log-norm slope {slope:.6f} = 2 +- 2%": abs(slope - 2.0) < 0.04,
    })


def test_c12_semigroup_and_composition(base_rule, base_grid):
    f = bump_profile(P00, base_rule, 2.0, 1.0)
    roundtrip = apply_fourier_multiplier(identity_symbol(P00), f, base_grid)
    tol = 2.0 * float(np.max(np.abs(roundtrip.values - f.values)))
    h1, h2, h12 = (heat_symbol(P00, s) for s in (0.3, 0.7, 1.0))
    seq = apply_fourier_multiplier(
        h1, apply_fourier_multiplier(h2, f, base_grid), base_grid)
    once = apply_fourier_multiplier(h12, f, base_grid)
    semi = float(np.max(np.abs(seq.values - once.values)))
    m1, m2 = heat_symbol(P00, 0.5), sobolev_symbol(P00, -1.0)
    seq = apply_fourier_multiplier(
        m1, apply_fourier_multiplier(m2, f, base_grid), base_grid)
    once = apply_fourier_multiplier(compose_symbols(m1, m2), f, base_grid)
    comp = float(np.max(np.abs(seq.values - once.values)))
    report(12, "heat semigroup law and symbol composition", {
        f"heat(0.3)o heat(0.7) vs heat(1.0): {semi:.2e} <= 2x roundtrip "
        f"{tol:.2e}": semi <= tol,
        f"sequential vs composed symbol: {comp:.2e} <= 2x roundtrip":
            comp <= tol,
    })


def test_c13_picard_solvers(base_rule, base_grid):
    u0 = bump_profile(P00, base_rule, 2.0, 1.0)
    u1 = bump_profile(P00, base_rule, 3.0, 1.0)
    B = constant_symbol(P00, 1.0)
    horizon = heat_existence_time(u0.lp_norm(2), math.sqrt(2.0), 2.0) / 2.0
    heat = nonlinear_heat_solve(u0, B, 2.0, horizon, "biinvariant",
                                grid=base_grid)
    psi = constant_forcing(1.0)
    horizon_w = wave_existence_time(u0.lp_norm(2), u1.lp_norm(2),
                                    psi.l2_norm(1.0), math.sqrt(2.0),
                                    2.0) / 2.0
    wave = nonlinear_wave_solve(u0, u1, psi, B, 2.0, horizon_w,
                                "biinvariant", grid=base_grid)
    free = nonlinear_wave_solve(u0, u1, constant_forcing(0.0), B, 2.0, 0.5,
                                "biinvariant", grid=base_grid)
    affine_dev = max(
        float(np.max(np.abs(s.values - (u0.values + t * u1.values))))
        for t, s in zip(free.times, free.snapshots))
    report(13, "fixed-point solvers inside half the contraction horizon", {
        f"heat converged in {heat.iterations} < 100 sweeps": heat.converged
            and heat.iterations < 100,
        f"heat residual {heat.max_residual():.2e} < 1e-6":
            heat.max_residual() < 1e-6,
        f"wave converged in {wave.iterations} < 100 sweeps": wave.converged
            and wave.iterations < 100,
        f"wave residual {wave.max_residual():.2e} < 1e-6":
            wave.max_residual() < 1e-6,
        f"zero-forcing wave is affine to {affine_dev:.2e} < 1e-12":
            affine_dev < 1e-12,
    })


def test_c14_existence_time_formulas():
    heat_T = heat_existence_time(1.0, math.sqrt(2.0), 2.0)
    wave_T = wave_existence_time(1.0, 1.0, 1.0, 2.0, 2.0)
    on_boundary = global_smallness_check(2.0, 0.25, 1.0, 2.0, 1.0, 1.0)
    above = global_smallness_check(2.0, 0.25, 1.0, 2.0, 1.0 + 1e-12, 1.0)
    shorter = global_smallness_check(2.0, 0.25, 1.0, 2.0, 1.0, 0.99)
    report(14, "contraction horizons and global smallness boundary", {
        f"heat horizon {heat_T!r} = 1/2": abs(heat_T - 0.5) < 1e-12,
        f"wave horizon {wave_T!r} = (1/4)^(1/3)":
            abs(wave_T - 0.25 ** (1.0 / 3.0)) < 1e-12,
        "boundary datum accepted": on_boundary is True,
        "datum above boundary rejected": above is False,
        "shorter horizon tightens the boundary": shorter is False,
    })
