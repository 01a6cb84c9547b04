"""JSON encodings for the shared value types.

Complex vectors: {"n": N, "re": [...], "im": [...]}. Complex matrices split
the same way with nested lists. All values assume the package-wide transform
convention documented in spectral.py. Not-a-number residuals serialize as
null.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .cyclic import WeightedCyclicInvariants
from .errors import InputFormatError
from .group import GroupElement
from .invariants import HeisenbergInvariants
from .pipeline import OrbitRecoveryReport


def load_json(path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputFormatError(f"cannot read JSON from {path}: {exc}") from exc


def dump_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _require(obj, key, kinds, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputFormatError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kinds):
        raise InputFormatError(f"{where}: field {key!r} has the wrong type")
    return value


def _float_list(obj, key, length, where):
    values = _require(obj, key, list, where)
    if len(values) != length:
        raise InputFormatError(f"{where}: field {key!r} must have length {length}")
    try:
        return [float(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{where}: field {key!r} must hold numbers") from exc


def complex_vector_to_json(x) -> dict:
    x = np.asarray(x, dtype=np.complex128)
    return {
        "n": int(len(x)),
        "re": [float(v) for v in x.real],
        "im": [float(v) for v in x.imag],
    }


def complex_vector_from_json(obj) -> np.ndarray:
    where = "complex vector"
    n = _require(obj, "n", int, where)
    if isinstance(n, bool) or n < 1:
        raise InputFormatError(f"{where}: 'n' must be a positive integer")
    re = _float_list(obj, "re", n, where)
    im = _float_list(obj, "im", n, where)
    arr = np.asarray(re, dtype=np.float64) + 1j * np.asarray(im, dtype=np.float64)
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise InputFormatError(f"{where}: entries must be finite")
    return arr


def _matrix_to_json(mat) -> dict:
    mat = np.asarray(mat, dtype=np.complex128)
    return {
        "re": [[float(v) for v in row] for row in mat.real],
        "im": [[float(v) for v in row] for row in mat.imag],
    }


def _matrix_from_json(obj, n, where) -> np.ndarray:
    re = _require(obj, "re", list, where)
    im = _require(obj, "im", list, where)
    if len(re) != n or len(im) != n:
        raise InputFormatError(f"{where}: matrix must have {n} rows")
    rows = []
    for re_row, im_row in zip(re, im):
        if not isinstance(re_row, list) or not isinstance(im_row, list):
            raise InputFormatError(f"{where}: matrix rows must be lists")
        if len(re_row) != n or len(im_row) != n:
            raise InputFormatError(f"{where}: matrix rows must have length {n}")
        try:
            rows.append(
                np.asarray([float(v) for v in re_row])
                + 1j * np.asarray([float(v) for v in im_row])
            )
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f"{where}: matrix entries must be numbers") from exc
    mat = np.asarray(rows, dtype=np.complex128)
    if not (np.all(np.isfinite(mat.real)) and np.all(np.isfinite(mat.imag))):
        raise InputFormatError(f"{where}: matrix entries must be finite")
    return mat


def group_element_to_json(g: GroupElement) -> dict:
    return {"N": g.order, "k": g.k, "n": g.n, "m": g.m}


def group_element_from_json(obj) -> GroupElement:
    where = "group element"
    order = _require(obj, "N", int, where)
    if isinstance(order, bool) or order < 1:
        raise InputFormatError(f"{where}: 'N' must be a positive integer")
    fields = {}
    for key in ("k", "n", "m"):
        value = _require(obj, key, int, where)
        if isinstance(value, bool):
            raise InputFormatError(f"{where}: field {key!r} must be an integer")
        fields[key] = value
    return GroupElement(order, fields["k"], fields["n"], fields["m"])


def invariants_to_json(inv: HeisenbergInvariants) -> dict:
    return {
        "n": inv.n,
        "bm": _matrix_to_json(inv.bm),
        "bfm": _matrix_to_json(inv.bfm),
        "iN": {"re": float(inv.power_sum.real), "im": float(inv.power_sum.imag)},
    }


def invariants_from_json(obj) -> HeisenbergInvariants:
    where = "invariant bundle"
    n = _require(obj, "n", int, where)
    if isinstance(n, bool) or n < 1:
        raise InputFormatError(f"{where}: 'n' must be a positive integer")
    bm = _matrix_from_json(_require(obj, "bm", dict, where), n, where + " (bm)")
    bfm = _matrix_from_json(_require(obj, "bfm", dict, where), n, where + " (bfm)")
    i_obj = _require(obj, "iN", dict, where)
    power = complex(
        float(_require(i_obj, "re", (int, float), where + " (iN)")),
        float(_require(i_obj, "im", (int, float), where + " (iN)")),
    )
    return HeisenbergInvariants(n=n, bm=bm, bfm=bfm, power_sum=power)


def weighted_invariants_to_json(inv: WeightedCyclicInvariants) -> dict:
    return {
        "n": inv.n,
        "r": float(inv.r),
        "a": [{"re": float(v.real), "im": float(v.imag)} for v in inv.a],
    }


def weighted_invariants_from_json(obj) -> WeightedCyclicInvariants:
    where = "weighted invariants"
    n = _require(obj, "n", int, where)
    if isinstance(n, bool) or n < 1:
        raise InputFormatError(f"{where}: 'n' must be a positive integer")
    r = _require(obj, "r", (int, float), where)
    entries = _require(obj, "a", list, where)
    if len(entries) != n:
        raise InputFormatError(f"{where}: 'a' must have length {n}")
    chain = []
    for entry in entries:
        re = _require(entry, "re", (int, float), where + " (a)")
        im = _require(entry, "im", (int, float), where + " (a)")
        chain.append(complex(float(re), float(im)))
    try:
        return WeightedCyclicInvariants(n=n, r=float(r), a=tuple(chain))
    except ValueError as exc:
        raise InputFormatError(f"{where}: {exc}") from exc


def _nan_to_null(value: float):
    return None if not math.isfinite(value) else float(value)


def recovery_report_to_json(report: OrbitRecoveryReport) -> dict:
    residuals = report.stage_residuals
    return {
        "candidate": complex_vector_to_json(report.candidate),
        "success": bool(report.success),
        "stage_residuals": {
            "bm_inversion": _nan_to_null(residuals.bm_inversion),
            "bfm_inversion": _nan_to_null(residuals.bfm_inversion),
            "phase_retrieval": _nan_to_null(residuals.phase_retrieval),
            "phase_fix": _nan_to_null(residuals.phase_fix),
            "invariant_match": _nan_to_null(residuals.invariant_match),
        },
        "diagnostics": report.diagnostics,
    }
