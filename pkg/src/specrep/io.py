"""JSON reading and writing for matrices and reports.

Matrices are ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` in row-major
order.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError


def matrix_to_dict(M) -> dict:
    M = np.asarray(M, dtype=complex)
    rows, cols = M.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(z.real), float(z.imag)] for z in M.ravel()],
    }


def matrix_from_dict(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("matrix JSON must be an object")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise ParseError(f"matrix JSON is missing {key!r}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    for name, v in (("rows", rows), ("cols", cols)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ParseError(f"{name} must be a positive integer, got {v!r}")
    if not isinstance(data, list):
        raise ParseError("data must be a list of [re, im] pairs")
    if len(data) != rows * cols:
        raise ParseError(f"data has {len(data)} entries, expected rows*cols = {rows * cols}")
    values = []
    for k, entry in enumerate(data):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
        ):
            raise ParseError(f"data[{k}] must be a [re, im] pair of numbers, got {entry!r}")
        if not all(math.isfinite(x) for x in entry):
            raise ParseError(f"data[{k}] is not finite")
        values.append(complex(entry[0], entry[1]))
    return np.array(values, dtype=complex).reshape(rows, cols)


def loads_matrix(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return matrix_from_dict(obj)


def load_matrix(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return loads_matrix(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_matrix(M, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(M)) + "\n")


def _default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, indent=indent, default=_default)
