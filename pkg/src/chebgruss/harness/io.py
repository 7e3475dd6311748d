"""Instance files and JSON output.

Instance schema::

    {"weights": [real, ...],
     "scalars": [real, ...] | [[re, im], ...],
     "vectors": [[real, ...], ...],
     "norm": {"kind": "lp", "p": 2.0} | {"kind": "linf"} | {"kind": "l1"}
             | {"kind": "complex_modulus"} | {"kind": "real_abs"}}

For ``complex_modulus`` each vector is a ``[re, im]`` pair; for
``real_abs`` each vector is a one-element list (a bare number is accepted).
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path
from typing import Any

import numpy as np

from ..space import INF, Instance, NormDescriptor


class InstanceFormatError(ValueError):
    pass


def parse_norm_spec(text: str, dimension: int = 1) -> NormDescriptor:
    """Parse the CLI form ``lp:P``, ``l1``, ``linf``, ``complex_modulus`` or ``real_abs``."""
    text = text.strip().lower()
    if text == "l1":
        return NormDescriptor.l1(dimension)
    if text in ("linf", "lp:inf"):
        return NormDescriptor.linf(dimension)
    if text.startswith("lp:"):
        return NormDescriptor.lp(float(text[3:]), dimension)
    if text == "complex_modulus":
        return NormDescriptor.complex_modulus()
    if text == "real_abs":
        return NormDescriptor.real_abs()
    raise ValueError(f"unrecognised norm {text!r}")


def norm_from_json(obj: dict[str, Any], dimension: int) -> NormDescriptor:
    kind = obj.get("kind")
    if kind == "lp":
        p = obj.get("p", 2.0)
        return NormDescriptor.lp(INF if p in ("inf", "Infinity") else float(p), dimension)
    if kind == "l1":
        return NormDescriptor.l1(dimension)
    if kind == "linf":
        return NormDescriptor.linf(dimension)
    if kind == "complex_modulus":
        return NormDescriptor.complex_modulus()
    if kind == "real_abs":
        return NormDescriptor.real_abs()
    raise InstanceFormatError(f"unknown norm kind {kind!r}")


def norm_to_json(nd: NormDescriptor) -> dict[str, Any]:
    if nd.kind != "lp":
        return {"kind": nd.kind}
    if nd.exponent == INF:
        return {"kind": "linf"}
    if nd.exponent == 1.0:
        return {"kind": "l1"}
    return {"kind": "lp", "p": nd.exponent}


def _scalars_from_json(raw: list) -> np.ndarray:
    if raw and all(isinstance(v, (list, tuple)) for v in raw):
        if any(len(v) != 2 for v in raw):
            raise InstanceFormatError("complex scalars must be [re, im] pairs")
        return np.array([complex(re, im) for re, im in raw])
    if any(isinstance(v, (list, tuple)) for v in raw):
        raise InstanceFormatError("scalars mix real numbers and [re, im] pairs")
    return np.array(raw, dtype=float)


def instance_from_json(obj: dict[str, Any]) -> Instance:
    try:
        weights = np.array(obj["weights"], dtype=float)
        scalars = _scalars_from_json(obj["scalars"])
        raw_vectors = obj["vectors"]
        norm_obj = obj.get("norm", {"kind": "lp", "p": 2.0})
    except KeyError as exc:
        raise InstanceFormatError(f"missing field {exc.args[0]!r}") from None
    kind = norm_obj.get("kind")
    if kind == "complex_modulus":
        pairs = np.array(raw_vectors, dtype=float)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise InstanceFormatError("complex_modulus vectors must be [re, im] pairs")
        vectors = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(-1, 1)
        return Instance(weights, scalars, vectors, NormDescriptor.complex_modulus())
    vectors = np.array(raw_vectors, dtype=float)
    if vectors.ndim == 1:
        vectors = vectors.reshape(-1, 1)
    if vectors.ndim != 2:
        raise InstanceFormatError("vectors must be a list of coordinate lists")
    return Instance(weights, scalars, vectors, norm_from_json(norm_obj, vectors.shape[1]))


def instance_to_json(inst: Instance) -> dict[str, Any]:
    if np.iscomplexobj(inst.scalars):
        scalars: list = [[float(z.real), float(z.imag)] for z in inst.scalars]
    else:
        scalars = [float(v) for v in inst.scalars]
    if inst.norm.is_complex_space:
        vectors = [[float(z.real), float(z.imag)] for z in inst.vectors[:, 0]]
    else:
        vectors = [[float(c) for c in row] for row in np.real(inst.vectors)]
    return {
        "weights": [float(w) for w in inst.weights],
        "scalars": scalars,
        "vectors": vectors,
        "norm": norm_to_json(inst.norm),
    }


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read instance file {path}: {exc.strerror}") from exc
    try:
        return instance_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: invalid JSON ({exc})") from None
    except (InstanceFormatError, ValueError) as exc:
        raise InstanceFormatError(f"{path}: {exc}") from None


def _plain(obj: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats into JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return f"{_FLOAT_TAG}{value:.17g}"
    if isinstance(obj, complex):
        return _plain([obj.real, obj.imag])
    return obj


_FLOAT_TAG = "@f17:"
_FLOAT_RE = re.compile(r'"' + re.escape(_FLOAT_TAG) + r'([^"]+)"')


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, floats written with 17 significant digits."""
    text = json.dumps(_plain(obj), sort_keys=True, indent=2)
    return _FLOAT_RE.sub(r"\1", text) + "\n"
