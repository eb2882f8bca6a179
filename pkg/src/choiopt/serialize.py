"""JSON and CSV wire formats.

Matrix JSON: {"rows": r, "cols": c, "data": [[re, im], ...]} with data in
row-major order.  Process matrices extend that object with dim_in, dim_out
and ordering: "in_tensor_out"; target operators additionally carry
kind: "target".  Numbers are written with Python's shortest round-trip float
representation, so loading reproduces the doubles bit-for-bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import ChoiOperator, KrausSet, require_valid_choi
from .solver import SolverResult
from .targets import TargetOperator

ORDERING = "in_tensor_out"


def matrix_to_obj(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_obj(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise ValueError(f"matrix data length {len(data)} != rows*cols {rows * cols}")
    flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    return flat.reshape(rows, cols)


def choi_to_obj(chi: ChoiOperator) -> dict:
    obj = {"dim_in": chi.dim_in, "dim_out": chi.dim_out, "ordering": ORDERING}
    obj.update(matrix_to_obj(chi.matrix))
    return obj


def choi_from_obj(obj: dict, validate: bool = True) -> ChoiOperator:
    if obj.get("ordering", ORDERING) != ORDERING:
        raise ValueError(f"unsupported ordering {obj.get('ordering')!r}")
    chi = ChoiOperator(int(obj["dim_in"]), int(obj["dim_out"]), matrix_from_obj(obj))
    if validate:
        require_valid_choi(chi)
    return chi


def target_to_obj(r: TargetOperator) -> dict:
    obj = {"dim_in": r.dim_in, "dim_out": r.dim_out, "ordering": ORDERING, "kind": "target"}
    obj.update(matrix_to_obj(r.matrix))
    return obj


def target_from_obj(obj: dict) -> TargetOperator:
    if obj.get("ordering", ORDERING) != ORDERING:
        raise ValueError(f"unsupported ordering {obj.get('ordering')!r}")
    return TargetOperator(int(obj["dim_in"]), int(obj["dim_out"]), matrix_from_obj(obj))


def kraus_to_obj(kraus: KrausSet) -> dict:
    return {
        "dim_in": kraus.dim_in,
        "dim_out": kraus.dim_out,
        "operators": [matrix_to_obj(a) for a in kraus.operators],
        "weights": [float(w) for w in kraus.weights],
    }


def kraus_from_obj(obj: dict) -> KrausSet:
    ops = tuple(matrix_from_obj(o) for o in obj["operators"])
    return KrausSet(
        int(obj["dim_in"]),
        int(obj["dim_out"]),
        ops,
        np.array([float(w) for w in obj["weights"]]),
    )


def result_to_obj(result: SolverResult) -> dict:
    return {
        "fidelity": result.fidelity,
        "bound": result.bound,
        "iterations": result.iterations,
        "converged": result.converged,
        "fidelity_trace": list(result.fidelity_trace),
        "chi": choi_to_obj(result.chi),
    }


def dump_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def format_float(x: float) -> str:
    """Decimal text with 15 significant digits for CSV cells."""
    return f"{x:.15g}"


def write_scan_csv(rows, path) -> None:
    lines = ["alpha,beta_opt,F_solver,F_closed,F_bound"]
    for row in rows:
        lines.append(
            ",".join(
                format_float(v)
                for v in (row.alpha, row.beta_opt, row.F_solver, row.F_closed, row.F_bound)
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_curve_csv(curve: np.ndarray, path) -> None:
    lines = ["theta,F"]
    for theta, f in curve:
        lines.append(f"{format_float(theta)},{format_float(f)}")
    Path(path).write_text("\n".join(lines) + "\n")
