"""JSON state, measurement and counterexample-bundle files.

State file::

    {"dims": [2, 2], "re": [[...], ...], "im": [[...], ...]}

Measurement file (one row per basis vector)::

    {"dim": 2, "label": "X", "vectors_re": [[...], ...], "vectors_im": [[...], ...]}

Floats are written with Python's shortest round-trip repr, so loading a
saved file reproduces the matrix bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, MalformedFile, QuantumInputError
from .measurements import ProjectiveMeasurement, measurement
from .state import DensityMatrix, validate_density


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"{path}: not valid JSON ({exc})") from exc


def _real_matrix(obj, key, where):
    if key not in obj:
        raise MalformedFile(f"{where}: missing field {key!r}")
    try:
        arr = np.array(obj[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedFile(f"{where}: field {key!r} is not a numeric 2-D array") from exc
    if arr.ndim != 2:
        raise MalformedFile(f"{where}: field {key!r} must be a 2-D array, got {arr.ndim}-D")
    return arr


def state_from_dict(obj, where="state", **tolerances) -> DensityMatrix:
    if not isinstance(obj, dict):
        raise MalformedFile(f"{where}: expected a JSON object")
    if "dims" not in obj or not isinstance(obj["dims"], list) or not all(
            isinstance(d, int) and not isinstance(d, bool) for d in obj["dims"]):
        raise MalformedFile(f"{where}: 'dims' must be a list of integers")
    re = _real_matrix(obj, "re", where)
    im = _real_matrix(obj, "im", where)
    if re.shape != im.shape:
        raise DimensionMismatch(f"{where}: re shape {re.shape} != im shape {im.shape}")
    if re.shape[0] != re.shape[1]:
        raise DimensionMismatch(f"{where}: matrix is not square, shape {re.shape}")
    try:
        return validate_density(re + 1j * im, obj["dims"], **tolerances)
    except QuantumInputError as exc:
        raise type(exc)(f"{where}: {exc.args[0]}") from exc


def state_to_dict(rho: DensityMatrix) -> dict:
    return {"dims": list(rho.dims), "re": rho.matrix.real.tolist(), "im": rho.matrix.imag.tolist()}


def measurement_from_dict(obj, where="measurement") -> ProjectiveMeasurement:
    if not isinstance(obj, dict):
        raise MalformedFile(f"{where}: expected a JSON object")
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MalformedFile(f"{where}: 'dim' must be a positive integer")
    re = _real_matrix(obj, "vectors_re", where)
    im = _real_matrix(obj, "vectors_im", where)
    if re.shape != im.shape:
        raise DimensionMismatch(f"{where}: vectors_re shape {re.shape} != vectors_im shape {im.shape}")
    if re.shape != (dim, dim):
        raise DimensionMismatch(f"{where}: expected {dim} vectors of length {dim}, got shape {re.shape}")
    try:
        return measurement(re + 1j * im, str(obj.get("label", "")))
    except QuantumInputError as exc:
        raise type(exc)(f"{where}: {exc.args[0]}") from exc


def measurement_to_dict(m: ProjectiveMeasurement) -> dict:
    return {"dim": m.dim, "label": m.label,
            "vectors_re": m.vectors.real.tolist(), "vectors_im": m.vectors.imag.tolist()}


def load_state(path, **tolerances) -> DensityMatrix:
    return state_from_dict(_read_json(path), str(path), **tolerances)


def save_state(rho: DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(rho)) + "\n")


def load_measurement(path) -> ProjectiveMeasurement:
    return measurement_from_dict(_read_json(path), str(path))


def save_measurement(m: ProjectiveMeasurement, path) -> None:
    Path(path).write_text(json.dumps(measurement_to_dict(m)) + "\n")


def write_bundle(path, relation_id, rho, ms, params, report) -> Path:
    """Write everything needed to re-run one relation instance."""
    bundle = {
        "relation_id": relation_id,
        "state": state_to_dict(rho),
        "measurements": [measurement_to_dict(m) for m in ms],
        "params": params,
        "report": report.as_dict(),
    }
    path = Path(path)
    path.write_text(json.dumps(bundle, indent=1, default=_jsonable) + "\n")
    return path


def read_bundle(path):
    obj = _read_json(path)
    for key in ("relation_id", "state", "measurements", "params"):
        if key not in obj:
            raise MalformedFile(f"{path}: bundle is missing {key!r}")
    rho = state_from_dict(obj["state"], f"{path}:state")
    ms = [measurement_from_dict(m, f"{path}:measurements[{i}]") for i, m in enumerate(obj["measurements"])]
    return obj["relation_id"], rho, ms, obj["params"]


def _jsonable(x):
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialize {type(x).__name__}")
