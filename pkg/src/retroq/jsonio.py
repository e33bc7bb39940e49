"""JSON (de)serialisation of operators, states, retrodictors and reports.

Complex scalars are two-element ``[re, im]`` arrays, matrices are arrays of
rows, and every writer sorts keys so output is byte-stable for fixed inputs.
"""

from __future__ import annotations

import json

import numpy as np

from .catalog import NamedExample
from .dependence import DependenceVerdict
from .measurement import Measurement, Povm, QuantumState
from .perfect import PerfectCheckReport, ProjectiveEquivalence, ProjectiveRetrodictor
from .simulation import TrialReport
from .unambiguous import RetrodictionAssessment, UnambiguousRetrodictor


def complex_to_obj(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _scalar_from_obj(obj) -> complex:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2
            and all(isinstance(x, (int, float)) for x in obj)):
        raise ValueError(f"complex scalar must be a [re, im] pair, got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def matrix_to_obj(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[complex_to_obj(z) for z in row] for row in m]


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ValueError("matrix must be a nonempty array of rows")
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise ValueError("matrix rows must be nonempty and of equal length")
    return np.array([[_scalar_from_obj(z) for z in row] for row in obj], dtype=complex)


def vector_to_obj(v: np.ndarray) -> list:
    return [complex_to_obj(z) for z in np.asarray(v, dtype=complex)]


def vector_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ValueError("vector must be a nonempty array of [re, im] pairs")
    return np.array([_scalar_from_obj(z) for z in obj], dtype=complex)


def measurement_to_obj(m: Measurement) -> dict:
    return {
        "d_in": m.d_in,
        "d_out": m.d_out,
        "outcomes": [[matrix_to_obj(a) for a in group] for group in m.outcomes],
    }


def measurement_from_obj(obj, tol=None) -> Measurement:
    outcomes = [[matrix_from_obj(a) for a in group] for group in obj["outcomes"]]
    return Measurement(int(obj["d_in"]), int(obj["d_out"]), outcomes, tol)


def povm_to_obj(p: Povm) -> dict:
    return {"d": p.d, "elements": [matrix_to_obj(e) for e in p.elements]}


def povm_from_obj(obj, tol=None) -> Povm:
    return Povm(int(obj["d"]), [matrix_from_obj(e) for e in obj["elements"]], tol)


def state_to_obj(s: QuantumState) -> dict:
    out: dict = {"kind": s.kind}
    out["data"] = vector_to_obj(s.data) if s.kind == "pure" else matrix_to_obj(s.data)
    if s.factor_dims is not None:
        out["factor_dims"] = list(s.factor_dims)
    return out


def state_from_obj(obj, tol=None) -> QuantumState:
    kind = obj["kind"]
    if kind == "pure":
        data = vector_from_obj(obj["data"])
    elif kind == "mixed":
        data = matrix_from_obj(obj["data"])
    else:
        raise ValueError(f"state kind must be 'pure' or 'mixed', got {kind!r}")
    dims = obj.get("factor_dims")
    factor_dims = (int(dims[0]), int(dims[1])) if dims is not None else None
    return QuantumState(kind, data, factor_dims, tol)


def projective_to_obj(r: ProjectiveRetrodictor) -> dict:
    return {"d_out": r.d_out, "projectors": [matrix_to_obj(p) for p in r.projectors]}


def projective_from_obj(obj, tol=None) -> ProjectiveRetrodictor:
    projectors = [matrix_from_obj(p) for p in obj["projectors"]]
    return ProjectiveRetrodictor(int(obj["d_out"]), projectors, tol)


def ud_to_obj(r: UnambiguousRetrodictor) -> dict:
    return {
        "d": r.d,
        "elements": [matrix_to_obj(e) for e in r.elements],
        "inconclusive_index": r.inconclusive_index,
    }


def ud_from_obj(obj, tol=None) -> UnambiguousRetrodictor:
    elements = [matrix_from_obj(e) for e in obj["elements"]]
    return UnambiguousRetrodictor(elements, int(obj.get("inconclusive_index", 0)), tol)


def operators_to_obj(ops) -> dict:
    return {"operators": [matrix_to_obj(a) for a in ops]}


def operators_from_obj(obj) -> list[np.ndarray]:
    return [matrix_from_obj(a) for a in obj["operators"]]


def perfect_report_to_obj(report: PerfectCheckReport) -> dict:
    return {
        "retrodictable": report.retrodictable,
        "max_residual": float(report.max_residual),
        "witness": list(report.witness) if report.witness is not None else None,
    }


def equivalence_to_obj(eq: ProjectiveEquivalence) -> dict:
    return {
        "equivalent": eq.equivalent,
        "kind": eq.kind,
        "transform": matrix_to_obj(eq.transform) if eq.transform is not None else None,
        "povm": povm_to_obj(eq.povm) if eq.povm is not None else None,
        "isometry_residual": float(eq.isometry_residual),
        "projector_residual": float(eq.projector_residual),
    }


def verdict_to_obj(v: DependenceVerdict) -> dict:
    certificates: dict = {
        "dependence": vector_to_obj(v.dependence) if v.dependence is not None else None,
        "not_lld_witness": (vector_to_obj(v.not_lld_witness)
                            if v.not_lld_witness is not None else None),
        "not_lli_witness": None,
        "lld_reason": v.lld_reason,
    }
    if v.not_lli_witness is not None:
        psi, alpha = v.not_lli_witness
        certificates["not_lli_witness"] = {
            "psi": vector_to_obj(psi),
            "alpha": vector_to_obj(alpha),
        }
    return {
        "linearly_independent": v.linearly_independent,
        "lld": v.lld,
        "lli": v.lli,
        "min_sigma": float(v.min_sigma),
        "certificates": certificates,
    }


def assessment_to_obj(a: RetrodictionAssessment) -> dict:
    return {
        "feasible": a.feasible,
        "recommended_state": (state_to_obj(a.recommended_state)
                              if a.recommended_state is not None else None),
        "p_inconclusive": (float(a.p_inconclusive)
                           if a.p_inconclusive is not None else None),
    }


def trial_report_to_obj(t: TrialReport) -> dict:
    return {
        "n_trials": t.n_trials,
        "confusion": [[int(c) for c in row] for row in t.confusion],
        "agreement_rate": float(t.agreement_rate),
        "inconclusive_rate": float(t.inconclusive_rate),
        "seed": t.seed,
    }


def example_to_obj(ex: NamedExample) -> dict:
    out: dict = {"name": ex.name, "description": ex.description}
    expected = {}
    for key, value in ex.expected.items():
        if isinstance(value, (np.floating, float)):
            expected[key] = float(value)
        elif isinstance(value, (np.integer, int)) and not isinstance(value, bool):
            expected[key] = int(value)
        elif isinstance(value, complex):
            expected[key] = complex_to_obj(value)
        else:
            expected[key] = value
    out["expected"] = expected
    if ex.measurement is not None:
        out["measurement"] = measurement_to_obj(ex.measurement)
    if ex.povm is not None:
        out["povm"] = povm_to_obj(ex.povm)
    if ex.operators is not None:
        out.update(operators_to_obj(ex.operators))
    return out


def detect_and_load(obj, tol=None):
    """Typed object from a parsed payload, keyed on its fields."""
    if not isinstance(obj, dict):
        raise ValueError("top-level payload must be a JSON object")
    # example dumps nest their payload under a type key
    if "measurement" in obj and isinstance(obj["measurement"], dict):
        return measurement_from_obj(obj["measurement"], tol)
    if "povm" in obj and isinstance(obj["povm"], dict):
        return povm_from_obj(obj["povm"], tol)
    if "outcomes" in obj:
        return measurement_from_obj(obj, tol)
    if "inconclusive_index" in obj:
        return ud_from_obj(obj, tol)
    if "projectors" in obj:
        return projective_from_obj(obj, tol)
    if "elements" in obj and "d" in obj:
        return povm_from_obj(obj, tol)
    if "kind" in obj:
        return state_from_obj(obj, tol)
    if "operators" in obj:
        return operators_from_obj(obj)
    raise ValueError("payload does not match any known format")


def load_file(path: str, tol=None):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return detect_and_load(obj, tol)


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
