"""
Machine-readable output helpers.

Complex numbers are written as ``[re, im]`` pairs and matrices as row-major nested lists. JSON is
written with sorted keys and two-space indentation so that repeated runs produce identical bytes.
"""

import csv
import json
import math
from pathlib import Path

import numpy as np

UNDEFINED = "undefined"


def complex_pair(value) -> list[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def complex_matrix(matrix) -> list[list[list[float]]]:
    """Row-major nested ``[re, im]`` pairs."""
    matrix = np.asarray(getattr(matrix, "entries", matrix), dtype=complex)
    return [[complex_pair(entry) for entry in row] for row in matrix]


def matrix_from_pairs(pairs) -> np.ndarray:
    array = np.asarray(pairs, dtype=float)
    return array[..., 0] + 1j * array[..., 1]


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating | float):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, complex | np.complexfloating):
        return complex_pair(value)
    if isinstance(value, Path):
        return str(value)
    return value


def dumps(document) -> str:
    return json.dumps(_plain(document), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_json(path, document) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(document), encoding="utf-8")
    return path


def _cell(value):
    if value is None:
        return UNDEFINED
    if isinstance(value, np.floating | float):
        return repr(float(value))
    return value


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, delimiter=",", lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    return path
