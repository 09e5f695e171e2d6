"""Small shared helpers: threading knobs and deterministic JSON output.

The package is deterministic by construction -- no wall-clock values, no
environment-dependent defaults except the thread count -- so that any
two runs with the same inputs produce byte-identical artifacts.
"""

from __future__ import annotations

import json
import math
import os
import re
from typing import Any

__all__ = ["thread_count", "json_dumps", "format_float"]


def thread_count() -> int:
    """Worker-thread budget, from the ``SL2H_THREADS`` environment
    variable.  Defaults to 1 (fully serial); values below 1 are clamped.
    """
    raw = os.environ.get("SL2H_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def format_float(x: float) -> str:
    """Fixed 17-significant-digit rendering: round-trips the double
    exactly and is byte-identical across platforms for the same bit
    pattern."""
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return "%.17g" % x


# ----------------------------------------------------------------------
# Deterministic JSON
# ----------------------------------------------------------------------
#
# Floats are rendered through :func:`format_float` rather than ``repr``
# so every artifact carries the full 17 significant digits.  The float
# text is smuggled through ``json.dumps`` inside a tagged string and
# unwrapped afterwards.  Keys are always sorted so output is
# order-independent.

_TAG = "\x00f:"


def _normalise(obj: Any) -> Any:
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, dict):
        return {str(k): _normalise(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalise(v) for v in obj]
    if isinstance(obj, complex):
        return [_normalise(obj.real), _normalise(obj.imag)]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        # numpy scalars and 0-d arrays
        return _normalise(obj.item())
    if isinstance(obj, float):
        return _TAG + format_float(obj)
    return obj


# json.dumps escapes the NUL sentinel into its six-character \\uXXXX
# form, so the unwrapping pattern must match the escaped text, not
# the raw byte.
_TAGGED_RE = re.compile(r'"\\u0000f:((?:[^"\\]|\\.)*)"')


def _untag(match: re.Match) -> str:
    body = match.group(1)
    return body.replace('\\"', '"')


def json_dumps(obj: Any) -> str:
    """Serialise ``obj`` deterministically: sorted keys, 17-significant-
    digit floats, ``nan``/``inf`` as strings, two-space indent, trailing
    newline."""
    text = json.dumps(_normalise(obj), sort_keys=True, indent=2)
    return _TAGGED_RE.sub(_untag, text) + "\n"


_RANGE_RE = re.compile(r"^\s*([^:]+):([^:]+):(\d+)\s*$")


def parse_range(text: str):
    """Parse an ``a:b:n`` grid description into ``(a, b, n)``.

    Used by the command-line driver for ``--t-grid`` style options.
    """
    m = _RANGE_RE.match(text)
    if not m:
        raise ValueError(f"expected 'start:stop:count', got {text!r}")
    a, b, n = float(m.group(1)), float(m.group(2)), int(m.group(3))
    if n < 2 or not (b > a):
        raise ValueError(f"degenerate range {text!r}")
    return a, b, n
