"""Instance file format: a single JSON document per instance.

Schema::

    {
      "m": int, "n": int,
      "Q": [m*m*n*n numbers, (i,j,k,l) row-major],
      "C": [m*m numbers, row-major],
      "D": [n*n numbers, row-major],
      "metadata": {...}          # optional, free-form provenance
    }

Numbers round-trip bit-exactly: writing uses the shortest decimal that
parses back to the same float.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import ParseError
from .model import Instance


def _require(doc: dict, key: str, kind, path: str):
    if key not in doc:
        raise ParseError(f"missing required field", path=f"{path}{key}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"expected {kind.__name__}", path=f"{path}{key}")
    return value


def _number_list(doc: dict, key: str, expected_len: int) -> np.ndarray:
    raw = _require(doc, key, list, "")
    if len(raw) != expected_len:
        raise ParseError(
            f"expected length {expected_len}, got {len(raw)}", path=key
        )
    out = np.empty(expected_len)
    for idx, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError("expected a number", path=f"{key}[{idx}]")
        if not math.isfinite(v):
            raise ParseError(f"non-finite value {v!r}", path=f"{key}[{idx}]")
        out[idx] = float(v)
    return out


def parse_instance(text: str | bytes) -> Instance:
    """Parse an instance document; errors carry the offending field path."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level document must be an object")
    m = _require(doc, "m", int, "")
    n = _require(doc, "n", int, "")
    if m < 1:
        raise ParseError(f"m must be >= 1, got {m}", path="m")
    if n < 1:
        raise ParseError(f"n must be >= 1, got {n}", path="n")
    Q = _number_list(doc, "Q", m * m * n * n).reshape(m, m, n, n)
    C = _number_list(doc, "C", m * m).reshape(m, m)
    D = _number_list(doc, "D", n * n).reshape(n, n)
    meta = doc.get("metadata")
    if meta is not None and not isinstance(meta, dict):
        raise ParseError("expected an object", path="metadata")
    return Instance(Q, C, D, meta=meta)


def write_instance(instance: Instance) -> str:
    """Serialize an instance to its JSON document (deterministic bytes)."""
    doc = {
        "m": instance.m,
        "n": instance.n,
        "Q": [float(v) for v in instance.Q.ravel()],
        "C": [float(v) for v in instance.C.ravel()],
        "D": [float(v) for v in instance.D.ravel()],
    }
    if instance.meta:
        doc["metadata"] = instance.meta
    return json.dumps(doc, sort_keys=True)


def load_instance(path) -> Instance:
    with open(path, "rb") as fh:
        return parse_instance(fh.read())


def save_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_instance(instance))
        fh.write("\n")
