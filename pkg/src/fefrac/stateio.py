"""JSON state files.

A state file is a JSON object::

    {"d": 2, "kind": "pure", "data": [[re, im], ...]}
    {"d": 2, "kind": "density", "data": [[[re, im], ...], ...]}

Entries follow the composite index ``a*d + k``; density rows are row-major.
Floats are written with ``repr`` (shortest exact round-trip form).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .states import DensityMatrix, PureState, validate_density


class StateFileError(ValueError):
    pass


def _pair(x, where: str) -> complex:
    if (not isinstance(x, list) or len(x) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)):
        raise StateFileError(f"{where}: expected a [re, im] pair of numbers, got {x!r}")
    z = complex(x[0], x[1])
    if not np.isfinite(z):
        raise StateFileError(f"{where}: entry is not finite")
    return z


def parse_state(obj) -> PureState | DensityMatrix:
    if not isinstance(obj, dict):
        raise StateFileError("top level: expected a JSON object")
    for key in ("d", "kind", "data"):
        if key not in obj:
            raise StateFileError(f"missing field '{key}'")
    d = obj["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise StateFileError(f"field 'd': expected an integer >= 2, got {d!r}")
    kind = obj["kind"]
    data = obj["data"]
    n = d * d
    if not isinstance(data, list) or len(data) != n:
        raise StateFileError(f"field 'data': expected {n} entries for d={d}")
    if kind == "pure":
        amp = np.array([_pair(x, f"data[{i}]") for i, x in enumerate(data)])
        norm = np.vdot(amp, amp).real
        try:
            return PureState(d, amp)
        except ValueError as exc:
            raise StateFileError(f"field 'data': {exc} (norm^2 = {norm!r})") from None
    if kind == "density":
        rows = []
        for i, row in enumerate(data):
            if not isinstance(row, list) or len(row) != n:
                raise StateFileError(f"data[{i}]: expected a row of {n} entries")
            rows.append([_pair(x, f"data[{i}][{j}]") for j, x in enumerate(row)])
        try:
            return validate_density(np.array(rows), d)
        except ValueError as exc:
            raise StateFileError(f"field 'data': {exc}") from None
    raise StateFileError(f"field 'kind': expected 'pure' or 'density', got {kind!r}")


def read_state(path) -> PureState | DensityMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_state(obj)


def _pairs(z) -> list:
    return [[float(v.real), float(v.imag)] for v in z]


def state_to_obj(state: PureState | DensityMatrix) -> dict:
    if isinstance(state, PureState):
        return {"d": state.d, "kind": "pure", "data": _pairs(state.amplitudes)}
    return {"d": state.d, "kind": "density", "data": [_pairs(row) for row in state.matrix]}


def write_state(state: PureState | DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(state_to_obj(state)) + "\n")
