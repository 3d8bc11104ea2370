"""Versioned parameter checkpoints.

Format (stable, documented for external tooling): a single JSON object

    {
      "format": "multisense-checkpoint",
      "version": 1,
      "meta": {...},                      # caller-supplied provenance
      "params": {
        "<name>": {"shape": [d0, d1, ...], "data": [flat row-major floats]}
      }
    }

Float values are serialized with Python's shortest round-trip repr, so a
load followed by a save reproduces the file byte for byte.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .autodiff import Tensor

FORMAT_NAME = "multisense-checkpoint"
FORMAT_VERSION = 1


def save_checkpoint(path, params: dict[str, Tensor], meta: dict | None = None) -> None:
    payload = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "meta": meta or {},
        "params": {
            name: {"shape": list(p.data.shape), "data": p.data.reshape(-1).tolist()}
            for name, p in params.items()
        },
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")


def load_checkpoint(path) -> tuple[dict[str, np.ndarray], dict]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != FORMAT_NAME:
        raise ValueError(f"{path}: not a {FORMAT_NAME} file")
    if payload.get("version") != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported checkpoint version {payload.get('version')}")
    arrays = {}
    for name, entry in payload["params"].items():
        arr = np.asarray(entry["data"], dtype=np.float64).reshape(entry["shape"])
        arrays[name] = arr
    return arrays, payload.get("meta", {})


def assign_params(params: dict[str, Tensor], arrays: dict[str, np.ndarray], prefix: str = "") -> None:
    """Copy loaded arrays into live parameter tensors, validating shapes."""
    for name, p in params.items():
        key = prefix + name
        if key not in arrays:
            raise KeyError(f"checkpoint is missing parameter {key!r}")
        arr = arrays[key]
        if arr.shape != p.data.shape:
            raise ValueError(f"parameter {key!r}: checkpoint shape {arr.shape} != model shape {p.data.shape}")
        p.data[...] = arr
