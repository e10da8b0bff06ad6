"""JSON file formats for states, bases, MUB families and UP-PIO specs.

State:  {"d": int, "entries": [[[re, im], ...], ...]}   (row-major)
Basis:  {"d": int, "vectors": [[[re, im], ...], ...]}   (one row per vector)
Spec:   {"d": int, "blocks": [[int]], "perms": [[int]], "phases": [real]}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import Basis, validate_density
from .exceptions import DimensionMismatch
from .pio import UpPioSpec


def _pairs(a):
    a = np.asarray(a, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _complex(rows, d, what):
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError(f"{what} must be a nested list of [re, im] pairs")
    if arr.shape[:2] != (d, d):
        raise DimensionMismatch(f"{what} has shape {arr.shape[:2]}, declared d={d}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_json(rho) -> dict:
    rho = np.asarray(rho)
    return {"d": int(rho.shape[0]), "entries": _pairs(rho)}


def state_from_json(obj, validate=True) -> np.ndarray:
    rho = _complex(obj["entries"], int(obj["d"]), "entries")
    return validate_density(rho) if validate else rho


def matrix_from_json(obj) -> np.ndarray:
    return _complex(obj["entries"], int(obj["d"]), "entries")


def basis_to_json(B: Basis) -> dict:
    return {"d": B.dim, "name": B.name, "vectors": _pairs(B.vectors)}


def basis_from_json(obj) -> Basis:
    d = int(obj["d"])
    return Basis(_complex(obj["vectors"], d, "vectors"), name=obj.get("name", "basis"))


def family_to_json(fam) -> list:
    return [basis_to_json(B) for B in fam.bases]


def spec_to_json(spec: UpPioSpec) -> dict:
    return {"d": spec.d, "blocks": [list(b) for b in spec.blocks],
            "perms": [list(p) for p in spec.perms], "phases": [float(x) for x in spec.phases]}


def spec_from_json(obj) -> UpPioSpec:
    return UpPioSpec(int(obj["d"]), obj["blocks"], obj["perms"], obj["phases"])


def load_json(path):
    return json.loads(Path(path).read_text())


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
