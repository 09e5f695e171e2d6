"""Artifact formats: CSV radial profiles, JSON spectra / states /
reports / calibration tables, and the small text language for
multiplier symbols.

Profiles travel as three-column CSV (``t, re, im``); everything
structured travels as JSON with floats rendered at 17 significant
digits, so identical inputs produce byte-identical artifacts.  Every
writer embeds the resolved run configuration under a ``config`` key
(CSV: a ``# config: ...`` comment line).
"""

from __future__ import annotations

import json
import os

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ValidationError
from .multiplier import (MultiplierSymbol, constant_symbol, heat_symbol,
                         identity_symbol, rational_symbol, sobolev_symbol,
                         zero_symbol)
from .profiles import RadialProfile
from .quadrature import RadialRule, SpectralGrid
from .spectrum import TypePair
from .spherical import EtaTable
from .transform import SpectralData
from .utils import format_float, json_dumps

__all__ = [
    "write_profile_csv",
    "read_profile_csv",
    "write_spectral_json",
    "read_spectral_json",
    "write_state_json",
    "write_eta_json",
    "read_eta_json",
    "write_report_json",
    "symbol_from_text",
]


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _open_read(path: str, what: str):
    try:
        return open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {what} {path!r}: {exc}") from exc


def _complex_cols(values: np.ndarray) -> dict:
    values = np.asarray(values, dtype=complex)
    return {"re": np.real(values).tolist(), "im": np.imag(values).tolist()}


def _cols_complex(block: dict, where: str) -> np.ndarray:
    try:
        re = np.asarray(block["re"], dtype=float)
        im = np.asarray(block["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed complex block in {where}: {exc}") from exc
    if re.shape != im.shape:
        raise ValidationError(f"re/im length mismatch in {where}")
    return re + 1j * im


# -- CSV profiles --------------------------------------------------------

def write_profile_csv(path: str, profile: RadialProfile,
                      config: dict | None = None) -> None:
    """Three-column CSV of the radial samples with a config echo."""
    lines = []
    if config is not None:
        lines.append("# config: " + " ".join(json_dumps(config).split()))
    lines.append("t,re,im")
    for t, v in zip(profile.rule.nodes, profile.values):
        lines.append(",".join((format_float(float(t)),
                               format_float(float(v.real)),
                               format_float(float(v.imag)))))
    _write_text(path, "\n".join(lines) + "\n")


def read_profile_csv(path: str):
    """Parse a profile CSV into ``(ts, values, config-or-None)``.

    Accepts any strictly increasing sample locations; a header row and
    ``#`` comment lines are skipped.  A two-column file is read as a
    real-valued profile.
    """
    ts, res, ims = [], [], []
    config = None
    with _open_read(path, "profile") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith("# config:") and config is None:
                    try:
                        config = json.loads(line[len("# config:"):])
                    except json.JSONDecodeError:
                        config = None
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                row = [float(p) for p in parts]
            except ValueError:
                continue  # header row
            if len(row) == 2:
                row.append(0.0)
            if len(row) != 3:
                raise ValidationError(
                    f"{path}: expected 2 or 3 columns, got {len(parts)}")
            ts.append(row[0]); res.append(row[1]); ims.append(row[2])
    if not ts:
        raise ValidationError(f"{path}: no data rows found")
    ts = np.asarray(ts, dtype=float)
    if np.any(np.diff(ts) <= 0.0):
        raise ValidationError(f"{path}: sample locations must be strictly increasing")
    return ts, np.asarray(res, dtype=float) + 1j * np.asarray(ims, dtype=float), config


def read_profile(path: str, pair: TypePair, rule: RadialRule) -> RadialProfile:
    """Load a profile CSV onto a radial rule (spline resampling when the
    file's nodes differ from the rule's)."""
    ts, values, _ = read_profile_csv(path)
    return RadialProfile.from_samples(pair, ts, values, rule)


# -- JSON spectra ---------------------------------------------------------

def write_spectral_json(path: str, spectral: SpectralData,
                        config: dict | None = None) -> None:
    payload = {
        "config": config,
        "pair": [spectral.pair.l, spectral.pair.n],
        "grid": {"lambda_max": spectral.grid.lambda_max,
                 "node_count": spectral.grid.node_count},
        "hat_H": _complex_cols(spectral.hat_H),
        "hat_B": {str(m): [float(c.real), float(c.imag)]
                  for m, c in sorted(spectral.hat_B.items())},
    }
    _write_text(path, json_dumps(payload))


def read_spectral_json(path: str) -> SpectralData:
    with _open_read(path, "spectral file") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON: {exc}") from exc
    try:
        pair = TypePair(int(payload["pair"][0]), int(payload["pair"][1]))
        grid = SpectralGrid(float(payload["grid"]["lambda_max"]),
                            int(payload["grid"]["node_count"]))
        hat_B = {int(k): complex(v[0], v[1])
                 for k, v in payload.get("hat_B", {}).items()}
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValidationError(f"{path}: malformed spectral file: {exc}") from exc
    hat_H = _cols_complex(payload.get("hat_H", {}), path)
    return SpectralData(pair, grid, hat_H, hat_B)


# -- JSON solver states ---------------------------------------------------

def write_state_json(path: str, state, config: dict | None = None) -> None:
    first = state.snapshots[0]
    payload = {
        "config": config,
        "pair": [first.pair.l, first.pair.n],
        "mode": state.mode,
        "converged": state.converged,
        "iterations": state.iterations,
        "note": state.note,
        "times": np.asarray(state.times).tolist(),
        "t_nodes": first.rule.nodes.tolist(),
        "snapshots": [_complex_cols(s.values) for s in state.snapshots],
        "residuals": np.asarray(state.residuals).tolist(),
        "history": list(state.history),
    }
    _write_text(path, json_dumps(payload))


# -- JSON calibration tables ----------------------------------------------

def write_eta_json(path: str, table: EtaTable,
                   config: dict | None = None) -> None:
    entries = [{"l": l, "n": n, "m": m, "eta": eta, "tol": tol}
               for (l, n, m, eta, tol) in sorted(table.entries())]
    _write_text(path, json_dumps({"config": config, "entries": entries}))


def read_eta_json(path: str) -> EtaTable:
    with _open_read(path, "calibration file") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON: {exc}") from exc
    table = EtaTable()
    try:
        for e in payload["entries"]:
            table.set(int(e["l"]), int(e["n"]), int(e["m"]),
                      float(e["eta"]), float(e["tol"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: malformed calibration file: {exc}") from exc
    return table


# -- JSON reports ----------------------------------------------------------

def write_report_json(path: str, payload: dict,
                      config: dict | None = None) -> None:
    body = dict(payload)
    body["config"] = config
    _write_text(path, json_dumps(body))


# -- symbol language --------------------------------------------------------

_SYMBOL_FORMS = ("identity", "zero", "const:<v>", "heat:<t>", "rational:<a>",
                 "sobolev:<a>", "<file>.json")


def _symbol_from_file(path: str, pair: TypePair) -> MultiplierSymbol:
    with _open_read(path, "symbol file") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON: {exc}") from exc
    cont = payload.get("continuous")
    if not cont:
        raise ValidationError(f"{path}: symbol file needs a 'continuous' block")
    lams = np.asarray(cont.get("lambda", ()), dtype=float)
    vals = _cols_complex(cont, path)
    if lams.size < 4 or lams.shape != vals.shape:
        raise ValidationError(
            f"{path}: continuous block needs matching 'lambda', 're', 'im' "
            "lists with at least 4 samples")
    if np.any(np.diff(lams) <= 0.0):
        raise ValidationError(f"{path}: 'lambda' samples must be increasing")
    spline_re = CubicSpline(lams, np.real(vals))
    spline_im = CubicSpline(lams, np.imag(vals))
    lo, hi = float(lams[0]), float(lams[-1])

    def continuous(lam):
        lam = np.clip(np.asarray(lam, dtype=float), lo, hi)
        return spline_re(lam) + 1j * spline_im(lam)

    discrete = {}
    for k, v in payload.get("discrete", {}).items():
        discrete[int(k)] = complex(v[0], v[1])
    missing = [m for m in pair.gamma() if m not in discrete]
    if missing:
        raise ValidationError(
            f"{path}: symbol file lacks discrete values at {missing} "
            f"required for pair ({pair.l}, {pair.n})")
    name = payload.get("name", os.path.basename(path))
    return MultiplierSymbol(pair, continuous,
                            {m: discrete[m] for m in pair.gamma()}, name)


def symbol_from_text(text: str, pair: TypePair) -> MultiplierSymbol:
    """Build a multiplier symbol from its textual form.

    Recognized forms: ``identity``, ``zero``, ``const:<v>``,
    ``heat:<t>``, ``rational:<a>``, ``sobolev:<a>``, or the path of a
    JSON file with sampled values.
    """
    text = text.strip()
    if text == "identity":
        return identity_symbol(pair)
    if text == "zero":
        return zero_symbol(pair)
    head, sep, arg = text.partition(":")
    if sep:
        try:
            value = float(arg)
        except ValueError as exc:
            if head in ("const", "heat", "rational", "sobolev"):
                raise ValidationError(
                    f"symbol {text!r}: argument {arg!r} is not a number") from exc
            value = None
        if head == "const":
            return constant_symbol(pair, value)
        if head == "heat":
            return heat_symbol(pair, value)
        if head == "rational":
            return rational_symbol(pair, value)
        if head == "sobolev":
            return sobolev_symbol(pair, value)
    if text.endswith(".json") or os.path.exists(text):
        if not os.path.exists(text):
            raise ValidationError(f"symbol file {text!r} does not exist")
        return _symbol_from_file(text, pair)
    raise ValidationError(
        f"unrecognized symbol {text!r}; expected one of {_SYMBOL_FORMS}")
