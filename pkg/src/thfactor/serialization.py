"""JSON symbol specifications and report documents.

A specification looks like::

    {"p": 2,
     "smooth": {"winding": 1, "log_coeffs": {"1": [0.3, 0], "-1": [0.3, 0]}},
     "jumps": [{"theta": 0.0, "beta": [0.1, 0.0]}]}

Angles are radians.  Anything that looks like a degree field is refused,
as is any unknown key.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import THFactorError
from .symbols import JumpFactor, LaurentPolynomial, PCSymbol, SmoothPart

SCHEMA = "thfactor-report/1"

_TOP_KEYS = {"p", "smooth", "jumps"}
_SMOOTH_KEYS = {"winding", "log_coeffs"}
_JUMP_KEYS = {"theta", "beta"}
_DEGREE_HINTS = ("deg", "degree", "degrees", "theta_deg", "units", "unit")


class SpecError(THFactorError, ValueError):
    """Invalid symbol specification; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise SpecError(where, f"expected an object, got {type(obj).__name__}")
    for key in obj:
        if key.lower() in _DEGREE_HINTS or "deg" in key.lower():
            raise SpecError(f"{where}.{key}", "angles are accepted in radians only; "
                            "degree fields are rejected")
        if key not in allowed:
            raise SpecError(f"{where}.{key}", f"unknown field (allowed: {sorted(allowed)})")


def _real(value, where) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(where, f"expected a real number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise SpecError(where, "must be finite")
    return x


def _complex(value, where) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SpecError(where, f"expected [re, im], got {value!r}")
    return complex(_real(value[0], f"{where}[0]"), _real(value[1], f"{where}[1]"))


def symbol_from_dict(data) -> PCSymbol:
    _check_keys(data, _TOP_KEYS, "spec")
    if "p" not in data:
        raise SpecError("spec.p", "missing Hardy exponent")
    p = _real(data["p"], "spec.p")
    if not 1.0 < p < math.inf:
        raise SpecError("spec.p", f"must satisfy 1 < p < inf, got {p}")
    smooth = data.get("smooth", {})
    _check_keys(smooth, _SMOOTH_KEYS, "spec.smooth")
    winding = smooth.get("winding", 0)
    if isinstance(winding, bool) or not isinstance(winding, int):
        raise SpecError("spec.smooth.winding", f"expected an integer, got {winding!r}")
    raw = smooth.get("log_coeffs", {})
    if not isinstance(raw, dict):
        raise SpecError("spec.smooth.log_coeffs", "expected an object mapping degree to [re, im]")
    coeffs = {}
    for key, value in raw.items():
        where = f"spec.smooth.log_coeffs.{key}"
        try:
            n = int(key)
        except ValueError:
            raise SpecError(where, "degree must be an integer") from None
        if str(n) != str(key).strip():
            raise SpecError(where, "degree must be an integer")
        coeffs[n] = _complex(value, where)
    jumps_raw = data.get("jumps", [])
    if not isinstance(jumps_raw, list):
        raise SpecError("spec.jumps", "expected a list")
    jumps = []
    for i, item in enumerate(jumps_raw):
        where = f"spec.jumps[{i}]"
        _check_keys(item, _JUMP_KEYS, where)
        for key in _JUMP_KEYS:
            if key not in item:
                raise SpecError(f"{where}.{key}", "missing")
        jumps.append(JumpFactor(_real(item["theta"], f"{where}.theta"),
                                _complex(item["beta"], f"{where}.beta")))
    try:
        return PCSymbol(p, SmoothPart(winding, LaurentPolynomial(coeffs)), tuple(jumps))
    except ValueError as exc:
        raise SpecError("spec.jumps", str(exc)) from None


def symbol_to_dict(sym: PCSymbol) -> dict:
    return {
        "p": sym.p,
        "smooth": {"winding": sym.smooth.winding,
                   "log_coeffs": {str(n): [c.real, c.imag] for n, c in sym.smooth.log_part.items}},
        "jumps": [{"theta": j.theta, "beta": [j.beta.real, j.beta.imag]} for j in sym.jumps],
    }


def parse_spec(text: str) -> PCSymbol:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    return symbol_from_dict(data)


def load_spec(path) -> PCSymbol:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def dump_spec(sym: PCSymbol) -> str:
    return json.dumps(symbol_to_dict(sym), indent=2)


def complex_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def report_document(command: str, body: dict) -> str:
    doc = {"schema": SCHEMA, "command": command}
    doc.update(body)
    return json.dumps(doc, indent=2, default=_json_default)


def _json_default(obj):
    if isinstance(obj, complex):
        return complex_pair(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def format_matrix(entries) -> str:
    """First line N, then N rows of comma-separated re:im entries."""
    n = len(entries)
    lines = [str(n)]
    for row in entries:
        lines.append(",".join(f"{complex(v).real:.17g}:{complex(v).imag:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    n = int(lines[0])
    out = np.empty((n, n), dtype=complex)
    for i, line in enumerate(lines[1:n + 1]):
        cells = line.split(",")
        if len(cells) != n:
            raise ValueError(f"row {i} has {len(cells)} entries, expected {n}")
        for k, cell in enumerate(cells):
            re, im = cell.split(":")
            out[i, k] = complex(float(re), float(im))
    return out
