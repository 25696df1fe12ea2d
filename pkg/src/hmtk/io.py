"""File formats: map specs, majorant specs, point strings, atomic output."""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path

from .core import HarmonicPolynomial
from .majorant import Majorant


class SpecError(ValueError):
    """Malformed map or majorant specification."""


def _reject_constant(name):
    raise SpecError(f"non-finite number {name} is not allowed")


def loads_strict(text: str):
    return json.loads(text, parse_constant=_reject_constant)


def _pair(item, where):
    if not (isinstance(item, (list, tuple)) and len(item) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)):
        raise SpecError(f"{where}: expected [re, im], got {item!r}")
    if not all(math.isfinite(x) for x in item):
        raise SpecError(f"{where}: non-finite coefficient")
    return complex(item[0], item[1])


def _coeffs(obj, key):
    seq = obj.get(key, [])
    if not isinstance(seq, list):
        raise SpecError(f"{key!r} must be a list of [re, im] pairs")
    return [_pair(c, f"{key}[{i}]") for i, c in enumerate(seq)] or [0j]


def map_from_dict(obj) -> HarmonicPolynomial:
    """Build a map from ``{"h": [[re, im], ...], "g": [...]}`` or a builtin.

    Builtins: ``{"builtin": "identity"}``, ``{"builtin": "c_z_plus_zbar",
    "C": [re, im]}``, ``{"builtin": "constant", "c": [re, im]}``. A norms
    report (which embeds its map under ``"map"``) is accepted too.
    """
    if not isinstance(obj, dict):
        raise SpecError("map spec must be a JSON object")
    if "map" in obj and isinstance(obj["map"], dict):
        return map_from_dict(obj["map"])
    if "builtin" in obj:
        name = obj["builtin"]
        if name == "identity":
            return HarmonicPolynomial.identity()
        if name == "c_z_plus_zbar":
            return HarmonicPolynomial.c_z_plus_zbar(_pair(obj.get("C", [1, 0]), "C"))
        if name == "constant":
            return HarmonicPolynomial.constant(_pair(obj.get("c", [1, 0]), "c"))
        raise SpecError(f"unknown builtin map {name!r}")
    if "h" not in obj and "g" not in obj:
        raise SpecError("map spec needs 'h'/'g' coefficient lists or 'builtin'")
    return HarmonicPolynomial(_coeffs(obj, "h"), _coeffs(obj, "g"))


def map_to_dict(f: HarmonicPolynomial) -> dict:
    return {"h": [[c.real, c.imag] for c in f.h.tolist()],
            "g": [[c.real, c.imag] for c in f.g.tolist()]}


def load_map(path) -> HarmonicPolynomial:
    return map_from_dict(loads_strict(Path(path).read_text()))


def majorant_from_dict(obj) -> Majorant:
    if not isinstance(obj, dict) or "family" not in obj:
        raise SpecError("majorant spec must be an object with a 'family'")
    params = {k: v for k, v in obj.items() if k != "family"}
    for k, v in params.items():
        vals = v if isinstance(v, list) else [v]
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)
                   for x in vals):
            raise SpecError(f"majorant parameter {k!r} must be finite numbers")
    try:
        return Majorant(obj["family"], params)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def load_majorant(path) -> Majorant:
    return majorant_from_dict(loads_strict(Path(path).read_text()))


def parse_point(text: str) -> complex:
    """Parse ``"a+bi"``, ``"a-bj"``, ``"a"`` or ``"bi"`` into a complex."""
    s = text.strip().replace(" ", "")
    if not s:
        raise SpecError("empty point")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise SpecError(f"cannot parse point {text!r} (expected a+bi)") from None


def format_point(z: complex) -> str:
    z = complex(z)
    return f"{z.real!r}{'-' if z.imag < 0 else '+'}{abs(z.imag)!r}i"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
