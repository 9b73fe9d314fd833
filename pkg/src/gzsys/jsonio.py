"""JSON wire formats. Complex scalars are ``[re, im]`` pairs."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from gzsys.coords import GZCoord, SpectrumTower
from gzsys.errors import DomainError
from gzsys.flows import GroupWord
from gzsys.linalg import MonicPoly, as_matrix
from gzsys.orthopoly import DiscreteMeasure


class FormatError(ValueError):
    """Malformed JSON input."""


def scalar_to_json(z: complex) -> list[float]:
    z = complex(z)
    # normalise negative zeros so output is byte-stable
    return [z.real + 0.0, z.imag + 0.0]


def scalar_from_json(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise FormatError(f"complex scalar must be [re, im], got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def _vec(items) -> np.ndarray:
    return np.array([scalar_from_json(p) for p in items], dtype=complex)


def matrix_to_json(x) -> dict:
    x = np.asarray(x, dtype=complex)
    return {"n": x.shape[0], "entries": [[scalar_to_json(v) for v in row] for row in x]}


def matrix_from_json(obj) -> np.ndarray:
    """Accepts ``{"n", "entries"}`` or a bare list of rows."""
    if isinstance(obj, list):
        obj = {"n": len(obj), "entries": obj}
    try:
        n = int(obj["n"])
        rows = [[scalar_from_json(v) for v in row] for row in obj["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix object: {exc}") from exc
    x = np.array(rows, dtype=complex)
    if x.shape != (n, n):
        raise FormatError(f"matrix entries have shape {x.shape}, expected ({n}, {n})")
    try:
        return as_matrix(x)
    except DomainError as exc:
        raise FormatError(str(exc)) from exc


def poly_to_json(p: MonicPoly) -> dict:
    return {"degree": p.degree, "coeffs": [scalar_to_json(v) for v in p.coeffs]}


def poly_from_json(obj: dict) -> MonicPoly:
    try:
        coeffs = _vec(obj["coeffs"])
        degree = int(obj["degree"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad polynomial object: {exc}") from exc
    if coeffs.size != degree:
        raise FormatError("polynomial degree does not match coefficient count")
    return MonicPoly(coeffs)


def coord_to_json(c: GZCoord) -> dict:
    return {"n": c.n, "values": [scalar_to_json(v) for v in c.values]}


def coord_from_json(obj) -> GZCoord:
    """Accepts ``{"n", "values"}`` or a bare list of d(n) values."""
    if isinstance(obj, list):
        size = len(obj)
        n = int(round((np.sqrt(8 * size + 1) - 1) / 2))
        if n * (n + 1) // 2 != size:
            raise FormatError(f"{size} values is not a triangular number")
        obj = {"n": n, "values": obj}
    try:
        return GZCoord(int(obj["n"]), _vec(obj["values"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad coordinate object: {exc}") from exc


def tower_to_json(t: SpectrumTower) -> dict:
    return {"n": t.n, "levels": [[scalar_to_json(v) for v in lv] for lv in t.levels]}


def tower_from_json(obj) -> SpectrumTower:
    if isinstance(obj, list):
        obj = {"levels": obj}
    try:
        t = SpectrumTower(tuple(_vec(lv) for lv in obj["levels"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad tower object: {exc}") from exc
    if "n" in obj and int(obj["n"]) != t.n:
        raise FormatError("tower n does not match number of levels")
    return t


def word_to_json(w: GroupWord) -> dict:
    return {"levels": [[scalar_to_json(v) for v in lv] for lv in w.levels]}


def word_from_json(obj) -> GroupWord:
    if isinstance(obj, list):
        obj = {"levels": obj}
    try:
        return GroupWord(tuple(_vec(lv) for lv in obj["levels"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad word object: {exc}") from exc


def measure_from_json(obj: dict) -> DiscreteMeasure:
    try:
        return DiscreteMeasure(np.asarray(obj["nodes"], dtype=float), np.asarray(obj["weights"], dtype=float))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad measure object: {exc}") from exc


def measure_to_json(mu: DiscreteMeasure) -> dict:
    return {"nodes": mu.nodes.tolist(), "weights": mu.weights.tolist()}


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read JSON from {path}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
