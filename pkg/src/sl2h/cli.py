"""Command-line driver.

One dispatch per process; exit code 0 on success, 2 when the inputs
fail validation (including usage errors), 3 when an iterative numerical
procedure does not converge.  ``--config file.json`` supplies defaults
for any flag of the chosen subcommand (explicit flags win).  Every
artifact embeds the fully resolved configuration, and all floating
point output is rendered at 17 significant digits, so identical
invocations produce byte-identical files.  The environment variable
``SL2H_THREADS`` caps internal parallelism.

Subcommands
-----------
decompose, density, gamma, spherical
    Group factorisations, spectral density values, discrete index sets,
    spherical-function tables.
transform, invert, plancherel-check, calibrate-eta
    The two-part spectral transform, its inverse, the energy identity,
    and the discrete-part normalisation.
multiplier, bound, inequality-check
    Operator application, operator-norm bounds, and norm-inequality
    ratio sweeps.
heat-solve, wave-solve, existence-time
    Evolution problems and their contraction horizons.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io as sio
from .calibration import calibrate_pair, calibrate_table
from .errors import ConvergenceError, ValidationError
from .group import GroupElement
from .inequalities import default_family, family_check
from .multiplier import (SpectralFunction, apply_fourier_multiplier,
                         heat_bound, multiplier_norm_bound,
                         spectral_norm_bound)
from .pde import (DEFAULT_NODES_PER_UNIT, MODES, constant_forcing,
                  heat_existence_time, nonlinear_heat_solve,
                  nonlinear_wave_solve, wave_existence_time)
from .profiles import RadialProfile
from .quadrature import RadialRule, SpectralGrid
from .spectrum import Parity, TypePair, plancherel_density
from .spherical import SphericalParams, phi_radial
from .transform import forward, inverse, plancherel_check
from .utils import format_float, json_dumps, parse_range

__all__ = ["main"]


# -- small parsers ----------------------------------------------------------

def _parse_lambda(text: str) -> complex:
    """A spectral parameter: ``re`` or ``re,im``, with ``i``/``2i``/``i2``
    accepted for points on the imaginary axis."""
    t = text.strip().lower()
    try:
        if "," in t:
            re_part, im_part = t.split(",", 1)
            return complex(float(re_part), float(im_part))
        if "i" in t:
            rest = t.replace("i", "", 1).strip()
            if rest in ("", "+", "-"):
                rest += "1"
            return complex(0.0, float(rest))
        return complex(float(t), 0.0)
    except ValueError as exc:
        raise ValidationError(f"bad spectral parameter {text!r}") from exc


def _parse_matrix(text: str) -> GroupElement:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != 4:
        raise ValidationError(
            f"--matrix wants four comma-separated entries a,b,c,d; got {text!r}")
    try:
        a, b, c, d = (float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"non-numeric matrix entry in {text!r}") from exc
    return GroupElement([[a, b], [c, d]])


def _parse_norms(text: str, count: int, what: str) -> list[float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise ValidationError(f"--norms wants {count} value(s) for {what}, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ValidationError(f"non-numeric norm in {text!r}") from exc
    return vals


def _parse_pairs(text: str) -> list[TypePair]:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValidationError(
                f"--pairs wants 'l,n' chunks separated by ';', got {text!r}")
        try:
            pairs.append(TypePair(int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValidationError(f"non-integer weight in {text!r}") from exc
    if not pairs:
        raise ValidationError("--pairs named no type pairs")
    return pairs


def _parse_forcing(text: str):
    t = text.strip()
    head, sep, arg = t.partition(":")
    if head == "const" and sep:
        try:
            return constant_forcing(float(arg))
        except ValueError as exc:
            raise ValidationError(f"bad forcing value in {text!r}") from exc
    if head == "zero" and not sep:
        return constant_forcing(0.0)
    try:
        return constant_forcing(float(t))
    except ValueError as exc:
        raise ValidationError(
            f"unrecognized forcing {text!r}; expected const:<v>, zero, "
            "or a plain number") from exc


def _spectral_fn_from_text(text: str) -> SpectralFunction:
    """Scalar spectral functions for the monotone-class bound:
    ``heat:<t>`` is ``exp(-t s)``, ``rational:<a>`` is ``(4 s)^-a``, and
    ``sobolev:<a>`` is ``(1 + s)^a`` (decreasing only for ``a < 0``)."""
    head, sep, arg = text.strip().partition(":")
    if not sep:
        raise ValidationError(
            f"spectral bound wants heat:<t>, rational:<a>, or sobolev:<a>; got {text!r}")
    try:
        v = float(arg)
    except ValueError as exc:
        raise ValidationError(f"bad argument in {text!r}") from exc
    if head == "heat":
        if v <= 0.0:
            raise ValidationError(f"heat time must be positive, got {v}")
        return SpectralFunction(lambda s: np.exp(-v * s), True, text.strip())
    if head == "rational":
        return SpectralFunction(lambda s: (4.0 * s) ** (-v), v > 0.0, text.strip())
    if head == "sobolev":
        return SpectralFunction(lambda s: (1.0 + s) ** v, v < 0.0, text.strip())
    raise ValidationError(
        f"spectral bound wants heat:<t>, rational:<a>, or sobolev:<a>; got {text!r}")


# -- shared context ----------------------------------------------------------

def _pair(args) -> TypePair:
    return TypePair(args.l, args.n)


def _rule(args) -> RadialRule:
    return RadialRule(args.t_max, args.points_per_panel)


def _grid(args) -> SpectralGrid:
    return SpectralGrid(args.lambda_max, args.lambda_nodes)


def _eta_table(args, pair: TypePair, rule: RadialRule, grid: SpectralGrid):
    """Calibration table from ``--eta`` if given, auto-calibrated on the
    run's own grids when the pair needs discrete constants it lacks."""
    table = sio.read_eta_json(args.eta) if getattr(args, "eta", None) else None
    if pair.gamma() and (table is None or not table.covers(pair)):
        table = calibrate_pair(pair, rule=rule, grid=grid, table=table)
    return table


def _config_echo(args) -> dict:
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key in ("func",):
            continue
        if value is None or isinstance(value, (bool, int, float, str)):
            cfg[key] = value
        elif isinstance(value, (list, tuple)):
            cfg[key] = list(value)
    return cfg


def _emit_report(args, payload: dict) -> None:
    """Reports go to stdout; ``--out`` writes the identical bytes too."""
    payload = dict(payload)
    payload["config"] = _config_echo(args)
    text = json_dumps(payload)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _load_profile(args, pair: TypePair, rule: RadialRule,
                  path: str | None = None) -> RadialProfile:
    return sio.read_profile(path or args.input, pair, rule)


def _profile_csv_text(args, ts, values) -> str:
    lines = ["# config: " + " ".join(json_dumps(_config_echo(args)).split()),
             "t,re,im"]
    for t, v in zip(ts, values):
        lines.append(",".join((format_float(float(t)),
                               format_float(float(np.real(v))),
                               format_float(float(np.imag(v))))))
    return "\n".join(lines) + "\n"


def _emit_profile_csv(args, profile: RadialProfile) -> None:
    if getattr(args, "out", None):
        sio.write_profile_csv(args.out, profile, _config_echo(args))
    else:
        sys.stdout.write(_profile_csv_text(args, profile.rule.nodes,
                                           profile.values))


# -- subcommand bodies --------------------------------------------------------

def _cmd_decompose(args) -> int:
    g = _parse_matrix(args.matrix)
    payload: dict = {"matrix": [list(map(float, row)) for row in g.matrix]}
    if args.which in ("iwasawa", "both"):
        tri = g.iwasawa()
        payload["iwasawa"] = {"theta": tri.theta, "t": tri.t, "v": tri.v}
    if args.which in ("cartan", "both"):
        pol = g.cartan()
        payload["cartan"] = {"theta1": pol.theta1, "t": pol.t,
                             "theta2": pol.theta2}
    _emit_report(args, payload)
    return 0


def _cmd_density(args) -> int:
    lam = _parse_lambda(args.lam)
    if lam.imag != 0.0:
        raise ValidationError("density is evaluated at real spectral parameters")
    value = float(plancherel_density(Parity.parse(args.tau), lam.real))
    sys.stdout.write(repr(value) + "\n")
    return 0


def _cmd_gamma(args) -> int:
    pair = _pair(args)
    sys.stdout.write(",".join(str(m) for m in pair.gamma()) + "\n")
    return 0


def _cmd_spherical(args) -> int:
    pair = _pair(args)
    lam = _parse_lambda(args.lam)
    SphericalParams(pair, lam)  # validates
    text = args.t_grid.strip()
    if ":" in text:
        try:
            a, b, n = parse_range(text)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        ts = np.linspace(a, b, n)
    else:
        try:
            ts = np.asarray([float(text)])
        except ValueError as exc:
            raise ValidationError(f"bad --t-grid value {text!r}") from exc
    if np.any(ts < 0.0):
        raise ValidationError("radial points must satisfy t >= 0")
    values = phi_radial(pair, [lam], ts)[0]
    body = _profile_csv_text(args, ts, values)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def _cmd_transform(args) -> int:
    pair, rule, grid = _pair(args), _rule(args), _grid(args)
    table = _eta_table(args, pair, rule, grid)
    profile = _load_profile(args, pair, rule)
    spectral = forward(profile, grid, table)
    if args.out:
        sio.write_spectral_json(args.out, spectral, _config_echo(args))
    else:
        _emit_report(args, {
            "pair": [pair.l, pair.n],
            "grid": {"lambda_max": grid.lambda_max, "node_count": grid.node_count},
            "hat_H": {"re": np.real(spectral.hat_H).tolist(),
                      "im": np.imag(spectral.hat_H).tolist()},
            "hat_B": {str(m): [c.real, c.imag]
                      for m, c in sorted(spectral.hat_B.items())},
        })
    return 0


def _cmd_invert(args) -> int:
    spectral = sio.read_spectral_json(args.input)
    rule = _rule(args)
    table = _eta_table(args, spectral.pair, rule, spectral.grid)
    profile = inverse(spectral, rule, table)
    if args.t_grid:
        try:
            a, b, n = parse_range(args.t_grid)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        ts = np.linspace(a, b, n)
        body = _profile_csv_text(args, ts, profile.evaluate_radial(ts))
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)
    else:
        _emit_profile_csv(args, profile)
    return 0


def _cmd_plancherel_check(args) -> int:
    pair, rule, grid = _pair(args), _rule(args), _grid(args)
    table = _eta_table(args, pair, rule, grid)
    profile = _load_profile(args, pair, rule)
    res = plancherel_check(profile, grid, table)
    _emit_report(args, {"pair": [pair.l, pair.n], "lhs": res.lhs,
                        "rhs": res.rhs, "rel_err": res.rel_err})
    return 0


def _cmd_multiplier(args) -> int:
    pair, rule, grid = _pair(args), _rule(args), _grid(args)
    table = _eta_table(args, pair, rule, grid)
    text = args.symbol
    if args.t is not None and ":" not in text and not text.endswith(".json"):
        text = f"{text}:{args.t}"
    symbol = sio.symbol_from_text(text, pair)
    profile = _load_profile(args, pair, rule)
    _emit_profile_csv(args, apply_fourier_multiplier(symbol, profile, grid, table))
    return 0


def _cmd_bound(args) -> int:
    pair = _pair(args)
    p, q = args.p, args.q
    if args.theorem == "lp-lq":
        if not args.symbol:
            raise ValidationError("--theorem lp-lq requires --symbol")
        symbol = sio.symbol_from_text(args.symbol, pair)
        value = multiplier_norm_bound(symbol, p, q)
    elif args.theorem == "spectral":
        if not args.symbol:
            raise ValidationError("--theorem spectral requires --symbol")
        value = spectral_norm_bound(_spectral_fn_from_text(args.symbol), p, q, pair)
    else:  # heat
        if args.time is None:
            raise ValidationError("--theorem heat requires --t")
        value = heat_bound(args.time, p, q, pair)
    _emit_report(args, {"theorem": args.theorem, "p": p, "q": q,
                        "pair": [pair.l, pair.n], "bound": float(value),
                        "terms": dict(value.terms)})
    return 0


def _cmd_inequality_check(args) -> int:
    pair, rule, grid = _pair(args), _rule(args), _grid(args)
    table = _eta_table(args, pair, rule, grid)
    fam_name = args.family.strip()
    if fam_name != "default":
        raise ValidationError(
            f"unknown family {args.family!r}; only 'default' is available "
            "(size via --family-size, randomised via --seed)")
    family = default_family(pair, args.family_size, args.seed)
    psi = None
    if args.which in ("paley", "hyp"):
        psi = sio.symbol_from_text(args.psi, pair)
    report = family_check(args.which, family, args.p, b=args.b, psi=psi,
                          rule=rule, grid=grid, eta_table=table,
                          refine=not args.no_refine)
    _emit_report(args, report.as_dict())
    return 0


def _cmd_heat_solve(args) -> int:
    pair, rule, grid = _pair(args), _rule(args), _grid(args)
    table = _eta_table(args, pair, rule, grid)
    u0 = _load_profile(args, pair, rule)
    symbol = sio.symbol_from_text(args.symbol, pair)
    state = nonlinear_heat_solve(
        u0, symbol, args.p, args.horizon, args.mode, grid=grid,
        eta_table=table, nodes_per_unit=args.nodes_per_unit,
        tol=args.tol, max_iter=args.max_iter)
    if args.out:
        sio.write_state_json(args.out, state, _config_echo(args))
    _emit_summary(args, state)
    return 0


def _cmd_wave_solve(args) -> int:
    pair, rule, grid = _pair(args), _rule(args), _grid(args)
    table = _eta_table(args, pair, rule, grid)
    u0 = _load_profile(args, pair, rule)
    u1 = _load_profile(args, pair, rule, path=args.u1)
    symbol = sio.symbol_from_text(args.symbol, pair)
    forcing = _parse_forcing(args.psi)
    state = nonlinear_wave_solve(
        u0, u1, forcing, symbol, args.p, args.horizon, args.mode, grid=grid,
        eta_table=table, nodes_per_unit=args.nodes_per_unit,
        tol=args.tol, max_iter=args.max_iter)
    if args.out:
        sio.write_state_json(args.out, state, _config_echo(args))
    _emit_summary(args, state)
    return 0


def _emit_summary(args, state) -> None:
    summary = {"converged": state.converged, "iterations": state.iterations,
               "max_residual": state.max_residual(), "sup_l2": state.sup_l2(),
               "mode": state.mode, "times": len(state.times)}
    if not args.out:
        summary["config"] = _config_echo(args)
    sys.stdout.write(json_dumps(summary))


def _cmd_existence_time(args) -> int:
    if args.problem == "heat":
        norms = _parse_norms(args.norms, 1, "heat (|u0|)")
        value = heat_existence_time(norms[0], args.c, args.p)
    else:
        norms = _parse_norms(args.norms, 3, "wave (|u0|,|u1|,|Psi|)")
        value = wave_existence_time(norms[0], norms[1], norms[2],
                                    args.c, args.p)
    sys.stdout.write(repr(float(value)) + "\n")
    return 0


def _cmd_calibrate_eta(args) -> int:
    rule, grid = _rule(args), _grid(args)
    pairs = _parse_pairs(args.pairs)
    table = calibrate_table(pairs, rule=rule, grid=grid, tol=args.tol)
    if args.out:
        sio.write_eta_json(args.out, table, _config_echo(args))
    else:
        entries = [{"l": l, "n": n, "m": m, "eta": eta, "tol": tol}
                   for (l, n, m, eta, tol) in sorted(table.entries())]
        _emit_report(args, {"entries": entries})
    return 0


# -- parser ------------------------------------------------------------------

def _build_parser():
    top = argparse.ArgumentParser(
        prog="sl2h",
        description="Harmonic analysis on the unimodular 2x2 matrix group: "
                    "factorisations, spherical transforms, multiplier "
                    "operators, inequality checks, and evolution solvers.")
    subs = top.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="JSON file of default flag values (flags win)")
    common.add_argument("--out", metavar="FILE",
                        help="output artifact path (default: stdout)")

    grids = argparse.ArgumentParser(add_help=False)
    grids.add_argument("--lambda-max", type=float, default=60.0,
                       help="spectral grid half-width (default 60)")
    grids.add_argument("--lambda-steps", "--lambda-nodes", dest="lambda_nodes",
                       type=int, default=1025,
                       help="spectral node count, odd (default 1025)")
    grids.add_argument("--t-max", type=float, default=8.0,
                       help="radial truncation (default 8)")
    grids.add_argument("--points-per-panel", type=int, default=64,
                       help="radial Gauss points per unit panel (default 64)")

    pairf = argparse.ArgumentParser(add_help=False)
    pairf.add_argument("--l", type=int, default=0, help="left rotation weight")
    pairf.add_argument("--n", type=int, default=0, help="right rotation weight")

    etaf = argparse.ArgumentParser(add_help=False)
    etaf.add_argument("--eta", metavar="FILE",
                      help="calibration table (auto-calibrates when absent)")

    def sub(name, parents, help_, fn):
        sp = subs.add_parser(name, parents=parents, help=help_)
        sp.set_defaults(func=fn)
        registry[name] = sp
        return sp

    sp = sub("decompose", [common], "factor a unimodular matrix", _cmd_decompose)
    sp.add_argument("--matrix", required=True, metavar="a,b,c,d")
    sp.add_argument("--which", choices=("iwasawa", "cartan", "both"),
                    default="both")

    sp = sub("density", [common], "spectral density value", _cmd_density)
    sp.add_argument("--tau", required=True, choices=("plus", "minus"),
                    help="parity class")
    sp.add_argument("--lambda", dest="lam", required=True,
                    help="real spectral parameter")

    sp = sub("gamma", [common, pairf], "discrete index set of a pair", _cmd_gamma)

    sp = sub("spherical", [common, pairf], "tabulate a spherical function",
             _cmd_spherical)
    sp.add_argument("--lambda", dest="lam", required=True,
                    help="spectral parameter 're' or 're,im'")
    sp.add_argument("--t-grid", "--t", dest="t_grid", default="0:5:101",
                    help="radial points 'start:stop:steps' or a single value")

    sp = sub("transform", [common, grids, pairf, etaf],
             "spectral transform of a profile", _cmd_transform)
    sp.add_argument("--input", required=True, metavar="FILE.csv")

    sp = sub("invert", [common, grids, etaf],
             "profile from spectral data", _cmd_invert)
    sp.add_argument("--input", required=True, metavar="FILE.json")
    sp.add_argument("--t-grid", dest="t_grid", metavar="a:b:n",
                    help="resample the output onto these radial points")

    sp = sub("plancherel-check", [common, grids, pairf, etaf],
             "energy-identity report", _cmd_plancherel_check)
    sp.add_argument("--input", required=True, metavar="FILE.csv")

    sp = sub("multiplier", [common, grids, pairf, etaf],
             "apply a multiplier operator", _cmd_multiplier)
    sp.add_argument("--symbol", required=True)
    sp.add_argument("--t", type=float,
                    help="parameter for a bare symbol name (e.g. --symbol heat --t 0.5)")
    sp.add_argument("--input", required=True, metavar="FILE.csv")

    sp = sub("bound", [common, pairf], "operator-norm bound", _cmd_bound)
    sp.add_argument("--theorem", required=True,
                    choices=("lp-lq", "spectral", "heat"))
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--symbol", help="symbol text (lp-lq, spectral)")
    sp.add_argument("--t", "--time", dest="time", type=float,
                    help="heat time (heat)")

    sp = sub("inequality-check", [common, grids, pairf, etaf],
             "norm-inequality ratios over a bump family", _cmd_inequality_check)
    sp.add_argument("--which", required=True,
                    choices=("hy", "dual-hy", "paley", "hyp"))
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--b", type=float, help="interpolation exponent (hyp)")
    sp.add_argument("--psi", default="rational:1",
                    help="positive weight symbol (paley, hyp)")
    sp.add_argument("--family", default="default")
    sp.add_argument("--family-size", type=int, default=12)
    sp.add_argument("--seed", type=int, help="randomise the family shapes")
    sp.add_argument("--no-refine", action="store_true",
                    help="skip the refined-grid drift pass")

    solve = argparse.ArgumentParser(add_help=False)
    solve.add_argument("--symbol", required=True,
                       help="multiplier inside the nonlinearity")
    solve.add_argument("--p", type=float, required=True,
                       help="nonlinearity power")
    solve.add_argument("--horizon", "--T", dest="horizon", type=float,
                       required=True, help="time horizon")
    solve.add_argument("--mode", choices=MODES, default="biinvariant")
    solve.add_argument("--nodes-per-unit", type=int,
                       default=DEFAULT_NODES_PER_UNIT)
    solve.add_argument("--tol", type=float, default=1e-8)
    solve.add_argument("--max-iter", type=int, default=100)

    sp = sub("heat-solve", [common, grids, pairf, etaf, solve],
             "nonlinear heat-type Cauchy problem", _cmd_heat_solve)
    sp.add_argument("--input", required=True, metavar="U0.csv")

    sp = sub("wave-solve", [common, grids, pairf, etaf, solve],
             "nonlinear wave-type Cauchy problem", _cmd_wave_solve)
    sp.add_argument("--input", required=True, metavar="U0.csv")
    sp.add_argument("--u1", required=True, metavar="U1.csv")
    sp.add_argument("--psi", default="const:1",
                    help="forcing coefficient (const:<v> or zero)")

    sp = sub("existence-time", [common], "contraction horizon", _cmd_existence_time)
    sp.add_argument("--problem", required=True, choices=("heat", "wave"))
    sp.add_argument("--c", type=float, required=True,
                    help="contraction constant (> 1)")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--norms", required=True,
                    help="initial-data norms: heat '|u0|'; wave '|u0|,|u1|,|Psi|'")

    sp = sub("calibrate-eta", [common, grids],
             "fit discrete normalisation constants", _cmd_calibrate_eta)
    sp.add_argument("--pairs", required=True, metavar="l,n;l,n;...")
    sp.add_argument("--tol", type=float, default=1e-6)

    return top, registry


def _extract_config_path(argv) -> str | None:
    for i, token in enumerate(argv):
        if token == "--config":
            if i + 1 >= len(argv):
                raise ValidationError("--config needs a file path")
            return argv[i + 1]
        if token.startswith("--config="):
            return token[len("--config="):]
    return None


def _apply_config(registry, path: str) -> None:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError(f"config {path!r} must hold a JSON object")
    normal = {str(k).replace("-", "_").lstrip("_"): v for k, v in cfg.items()}
    for sp in registry.values():
        known = {a.dest for a in sp._actions}
        hits = {k: v for k, v in normal.items() if k in known}
        if hits:
            sp.set_defaults(**hits)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser, registry = _build_parser()
        cfg_path = _extract_config_path(argv)
        if cfg_path:
            _apply_config(registry, cfg_path)
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"did not converge: {exc}", file=sys.stderr)
        if exc.history:
            print("history: " + ", ".join(format_float(h) for h in exc.history),
                  file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
