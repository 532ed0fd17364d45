"""JSON formats for matrices, measures, ensembles, solver reports and run manifests.

Matrices are stored as ``{"dim": n, "entries": [[[re, im], ...], ...]}`` in
row-major order.  Writers always emit ``[re, im]`` pairs; readers also accept
bare real numbers.  All files are written with sorted keys and a trailing
newline so that equal content gives equal bytes.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .barycenters import SolverReport, WeightedEnsemble
from .kubo_ando import GeneratorMeasure


class FormatError(ValueError):
    """A file does not follow the expected JSON layout."""

    category = "parse-error"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


# -- matrices ---------------------------------------------------------------


def matrix_to_json(X) -> dict:
    X = np.asarray(X)
    n = X.shape[0]
    entries = [[[float(np.real(X[i, k])), float(np.imag(X[i, k]))] for k in range(n)] for i in range(n)]
    return {"dim": n, "entries": entries}


def _entry(v, where):
    if isinstance(v, bool):
        raise FormatError(f"{where}: boolean is not a matrix entry")
    if isinstance(v, (int, float)):
        return complex(v, 0.0)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(u, (int, float)) and not isinstance(u, bool) for u in v):
        return complex(v[0], v[1])
    raise FormatError(f"{where}: expected a number or an [re, im] pair, got {v!r}")


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    """Parse matrix JSON; the result is real when every imaginary part is zero."""
    if not isinstance(obj, dict) or "entries" not in obj:
        raise FormatError(f"{where}: expected an object with 'dim' and 'entries'")
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"{where}: 'entries' must be a non-empty list of rows")
    n = len(rows)
    if obj.get("dim", n) != n or any(len(r) != n for r in rows):
        raise FormatError(f"{where}: entries are not a {obj.get('dim', n)}x{obj.get('dim', n)} array")
    X = np.array([[_entry(v, f"{where}[{i}][{k}]") for k, v in enumerate(r)] for i, r in enumerate(rows)])
    if np.all(X.imag == 0):
        return X.real.copy()
    return X


def read_matrix(path) -> np.ndarray:
    return matrix_from_json(read_json(path), str(path))


def write_matrix(path, X):
    write_json(path, matrix_to_json(X))


# -- measures ---------------------------------------------------------------


def measure_to_json(mu: GeneratorMeasure) -> dict:
    """Atoms plus the density recipe.  Nodes without a recipe are written explicitly."""
    out = {"atoms": [[float(l), float(w)] for l, w in zip(mu.atom_locations, mu.atom_masses)]}
    if mu.density:
        out["density"] = dict(mu.density)
    elif mu.node_locations.size:
        out["density_nodes"] = [[float(l), float(w)] for l, w in zip(mu.node_locations, mu.node_weights)]
    return out


def measure_from_json(obj, where: str = "measure") -> GeneratorMeasure:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    density = obj.get("density")
    if density is not None and not isinstance(density, dict):
        raise FormatError(f"{where}: 'density' must be an object")
    try:
        atoms = np.asarray(obj.get("atoms", []), dtype=float).reshape(-1, 2)
        nodes = None
        if "density_nodes" in obj:
            nodes = np.asarray(obj["density_nodes"], dtype=float).reshape(-1, 2)
    except (TypeError, ValueError):
        raise FormatError(f"{where}: atoms and nodes must be [location, mass] pairs") from None
    if nodes is not None:
        return GeneratorMeasure(atoms[:, 0], atoms[:, 1], nodes[:, 0], nodes[:, 1])
    if density is not None and "family" not in density:
        raise FormatError(f"{where}: density needs a 'family'")
    return GeneratorMeasure.build(atoms, density)


def read_measure(path) -> GeneratorMeasure:
    return measure_from_json(read_json(path), str(path))


# -- ensembles --------------------------------------------------------------


def ensemble_to_json(E: WeightedEnsemble) -> dict:
    return {"weights": [float(w) for w in E.weights], "matrices": [matrix_to_json(A) for A in E.matrices]}


def ensemble_from_json(obj, where: str = "ensemble") -> WeightedEnsemble:
    if not isinstance(obj, dict) or "matrices" not in obj or "weights" not in obj:
        raise FormatError(f"{where}: expected an object with 'weights' and 'matrices'")
    mats = [matrix_from_json(m, f"{where}.matrices[{j}]") for j, m in enumerate(obj["matrices"])]
    try:
        weights = np.asarray(obj["weights"], dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{where}: weights must be numbers") from None
    return WeightedEnsemble(tuple(mats), weights)


def read_ensemble(path) -> WeightedEnsemble:
    return ensemble_from_json(read_json(path), str(path))


def write_ensemble(path, E: WeightedEnsemble):
    write_json(path, ensemble_to_json(E))


def write_report(path, report: SolverReport):
    write_json(path, report.to_dict())


# -- manifests --------------------------------------------------------------


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the clock for reproducible builds
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        when = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        when = _dt.datetime.now(tz=_dt.timezone.utc).replace(microsecond=0)
    return when.isoformat()


@dataclass
class RunManifest:
    command: str
    inputs: list
    config: dict
    seed: Optional[int]
    version: str
    timestamp: str = field(default_factory=_timestamp)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d) -> "RunManifest":
        return cls(**d)


def manifest_path(out_path) -> Path:
    p = Path(out_path)
    return p.with_name(p.name + ".manifest.json")


def write_manifest(out_path, manifest: RunManifest) -> Path:
    path = manifest_path(out_path)
    write_json(path, manifest.to_dict())
    return path
