"""Readers for the on-disk formats the CLI accepts.

Structural problems raise SchemaError (exit code 2 at the CLI); values that
parse but violate mathematical invariants raise ValueError from the library
types (exit code 3).
"""

from __future__ import annotations

import json

import numpy as np

from .gpt import ConvexModel
from .quantum import DensityOperator


class SchemaError(Exception):
    """Input parsed as text but does not match the expected structure."""


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def read_vector(path: str) -> np.ndarray:
    """A JSON array of numbers, or a CSV file with one number per line."""
    text = _read_text(path)
    stripped = text.strip()
    if not stripped:
        raise SchemaError(f"{path}: empty input")
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(data, list) or not data:
            raise SchemaError(f"{path}: expected a non-empty JSON array")
        try:
            return np.array([float(v) for v in data], dtype=float)
        except (TypeError, ValueError):
            raise SchemaError(f"{path}: array entries must be numbers") from None
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if "," in line:
            raise SchemaError(f"{path}:{lineno}: expected a single column")
        try:
            values.append(float(line))
        except ValueError:
            raise SchemaError(f"{path}:{lineno}: not a number: {line!r}") from None
    if not values:
        raise SchemaError(f"{path}: no numeric rows found")
    return np.array(values, dtype=float)


def _json_object(path: str, required: tuple) -> dict:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    for key in required:
        if key not in data:
            raise SchemaError(f"{path}: missing required key {key!r}")
    return data


def _square_matrix(path: str, data, key: str, dim: int) -> np.ndarray:
    try:
        m = np.array(data, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: {key!r} must be a numeric matrix") from None
    if m.shape != (dim, dim):
        raise SchemaError(f"{path}: {key!r} must be {dim} x {dim}, got {m.shape}")
    return m


def read_density(path: str) -> DensityOperator:
    """JSON object with keys dim, re, im (im optional, defaults to zero)."""
    data = _json_object(path, required=("dim", "re"))
    try:
        dim = int(data["dim"])
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: 'dim' must be an integer") from None
    if dim < 1:
        raise SchemaError(f"{path}: 'dim' must be positive")
    re = _square_matrix(path, data["re"], "re", dim)
    im = (
        _square_matrix(path, data["im"], "im", dim)
        if "im" in data
        else np.zeros((dim, dim))
    )
    return DensityOperator(re + 1j * im)


def read_basis(path: str) -> np.ndarray:
    """Same shape as a density file; columns are the basis vectors."""
    data = _json_object(path, required=("dim", "re"))
    try:
        dim = int(data["dim"])
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: 'dim' must be an integer") from None
    re = _square_matrix(path, data["re"], "re", dim)
    im = (
        _square_matrix(path, data["im"], "im", dim)
        if "im" in data
        else np.zeros((dim, dim))
    )
    return re + 1j * im


def read_model(path: str) -> ConvexModel:
    """JSON object with keys dim and vertices (list of length-dim points)."""
    data = _json_object(path, required=("dim", "vertices"))
    try:
        dim = int(data["dim"])
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: 'dim' must be an integer") from None
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not vertices:
        raise SchemaError(f"{path}: 'vertices' must be a non-empty list")
    try:
        V = np.array(vertices, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: vertices must be numeric") from None
    if V.ndim != 2 or V.shape[1] != dim:
        raise SchemaError(f"{path}: vertices must each have {dim} coordinates")
    return ConvexModel(V)


def parse_state(text: str) -> np.ndarray:
    """A state given inline as a JSON array of numbers."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"state: invalid JSON ({exc})") from None
    if not isinstance(data, list) or not data:
        raise SchemaError("state: expected a non-empty JSON array")
    try:
        return np.array([float(v) for v in data], dtype=float)
    except (TypeError, ValueError):
        raise SchemaError("state: array entries must be numbers") from None
