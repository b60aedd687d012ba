"""Canonical JSON files for basis sets and reports.

Floats are written with 17 significant digits (``format(x, ".17g")``) so
that reading and re-writing a canonical file reproduces it byte for byte.
Complex entries are ``[re, im]`` pairs.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .bases import BasisSet, Claim

FORMAT_VERSION = 1


class FormatError(ValueError):
    """A file does not follow the basis-file schema."""


def _num(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite float {x!r}")
    return format(x + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0


def dumps(obj: Any, indent: int = 0, _level: int = 0) -> str:
    """JSON text with fixed float formatting; lists of scalars stay on one line."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        if indent and _level < 2:
            return "{\n" + ",\n".join(pad + it for it in items) + "\n" + end + "}"
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        parts = [dumps(v, indent, _level + 1) for v in obj]
        if indent and _level < 2 and any(isinstance(v, (dict, list, tuple)) for v in obj):
            return "[\n" + ",\n".join(pad + p for p in parts) + "\n" + end + "]"
        return "[" + ", ".join(parts) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def matrix_from_json(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"matrix is not a rectangular array of [re, im] pairs: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise FormatError(f"matrix must be rows x cols x [re, im], got array of shape {arr.shape}")
    m = arr[..., 0] + 1j * arr[..., 1]
    if shape is not None and m.shape != tuple(shape):
        raise FormatError(f"matrix of shape {m.shape} does not match dims {list(shape)}")
    if not np.all(np.isfinite(m)):
        raise FormatError("matrix entries must be finite")
    return m


def basis_to_dict(b: BasisSet) -> dict:
    return {
        "formatVersion": FORMAT_VERSION,
        "dims": [b.dim_a, b.dim_b],
        "claim": b.claim.value,
        "provenance": b.provenance,
        "members": [{"label": lab, "matrix": matrix_to_json(m)} for lab, m in zip(b.labels, b.members)],
    }


def basis_from_dict(data: Any) -> BasisSet:
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    missing = {"formatVersion", "dims", "claim", "provenance", "members"} - data.keys()
    if missing:
        raise FormatError(f"missing fields: {sorted(missing)}")
    if data["formatVersion"] != FORMAT_VERSION:
        raise FormatError(f"unsupported formatVersion {data['formatVersion']!r}")
    dims = data["dims"]
    if not (isinstance(dims, list) and len(dims) == 2 and all(isinstance(x, int) and x > 0 for x in dims)):
        raise FormatError("dims must be two positive integers")
    try:
        claim = Claim(data["claim"])
    except ValueError:
        raise FormatError(f"unknown claim {data['claim']!r}") from None
    if not isinstance(data["members"], list) or not isinstance(data["provenance"], dict):
        raise FormatError("members must be a list and provenance an object")
    labels, mats = [], []
    for k, entry in enumerate(data["members"]):
        if not isinstance(entry, dict) or "label" not in entry or "matrix" not in entry:
            raise FormatError(f"member {k} needs 'label' and 'matrix'")
        labels.append(str(entry["label"]))
        mats.append(matrix_from_json(entry["matrix"], tuple(dims)))
    members = np.array(mats).reshape(len(mats), *dims)
    try:
        return BasisSet(dims[0], dims[1], members, tuple(labels), data["provenance"], claim)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_basis(b: BasisSet) -> str:
    return dumps(basis_to_dict(b), indent=2) + "\n"


def load_basis_text(text: str) -> BasisSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return basis_from_dict(data)


def read_basis(path: str | os.PathLike) -> BasisSet:
    return load_basis_text(Path(path).read_text())


def digest(path: str | os.PathLike) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
