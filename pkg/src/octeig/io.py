"""Versioned JSON input documents.

    {"version": "1", "kind": "hermitian2", "payload": {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0, 0]}}

Kinds and payloads:

    hermitian2  {"p": real, "m": real, "a": oct}
    hermitian3  {"p": real, "m": real, "n": real, "a": oct, "b": oct, "c": oct}
                (matrix [[p, a, conj b], [conj a, m, c], [b, conj c, n]])
    vector      [oct, oct, ...]
    pair        {"vector": [oct, ...], "lambda": oct, "side": "left" | "right"}
                ("side" is optional and defaults to "right")

An oct is a list of exactly 8 finite numbers in basis order
(1, i, j, k, kl, jl, il, l).  Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import ParseError, VersionUnsupported
from .linalg import Hermitian2Params, Hermitian3Params

SUPPORTED_VERSIONS = ("1",)
KINDS = ("hermitian2", "hermitian3", "vector", "pair")


@dataclass(frozen=True)
class InputDocument:
    version: str
    kind: str
    payload: Any

    def to_json(self):
        return dump(self.payload, self.kind, self.version)


def _fail(field, message):
    raise ParseError(f"{field}: {message}")


def _real(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(field, f"expected a number, got {type(value).__name__}")
    if not math.isfinite(value):
        _fail(field, "number is not finite")
    return float(value)


def _oct(value, field):
    if not isinstance(value, list):
        _fail(field, "an octonion is a list of 8 numbers")
    if len(value) != 8:
        _fail(field, f"an octonion needs 8 numbers, got {len(value)}")
    return np.array([_real(x, f"{field}[{q}]") for q, x in enumerate(value)])


def _object(value, field, required, optional=()):
    if not isinstance(value, dict):
        _fail(field, "expected an object")
    unknown = sorted(set(value) - set(required) - set(optional))
    if unknown:
        _fail(field, f"unknown field(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in value]
    if missing:
        _fail(field, f"missing field(s) {', '.join(missing)}")
    return value


def _vector(value, field):
    if not isinstance(value, list) or not value:
        _fail(field, "a vector is a non-empty list of octonions")
    return np.stack([_oct(x, f"{field}[{i}]") for i, x in enumerate(value)])


def _payload(kind, raw):
    if kind == "hermitian2":
        d = _object(raw, "payload", ("p", "m", "a"))
        return Hermitian2Params(_real(d["p"], "payload.p"), _real(d["m"], "payload.m"),
                                _oct(d["a"], "payload.a"))
    if kind == "hermitian3":
        d = _object(raw, "payload", ("p", "m", "n", "a", "b", "c"))
        reals = [_real(d[k], f"payload.{k}") for k in ("p", "m", "n")]
        octs = [_oct(d[k], f"payload.{k}") for k in ("a", "b", "c")]
        return Hermitian3Params(*reals, *octs)
    if kind == "vector":
        return _vector(raw, "payload")
    d = _object(raw, "payload", ("vector", "lambda"), ("side",))
    side = d.get("side", "right")
    if side not in ("left", "right"):
        _fail("payload.side", f"expected 'left' or 'right', got {side!r}")
    return {"vector": _vector(d["vector"], "payload.vector"),
            "lambda": _oct(d["lambda"], "payload.lambda"), "side": side}


def parse_input(data):
    """Parse bytes or text into an InputDocument; raises ParseError."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    doc = _object(raw, "document", ("version", "kind", "payload"))
    version = doc["version"]
    if not isinstance(version, str):
        _fail("version", "expected a string")
    if version not in SUPPORTED_VERSIONS:
        raise VersionUnsupported(f"version: {version!r} is not one of {list(SUPPORTED_VERSIONS)}")
    kind = doc["kind"]
    if kind not in KINDS:
        _fail("kind", f"expected one of {list(KINDS)}, got {kind!r}")
    return InputDocument(version, kind, _payload(kind, doc["payload"]))


def load(path):
    with open(path, "rb") as fh:
        return parse_input(fh.read())


def _oct_list(a):
    return [float(x) for x in np.asarray(a, dtype=float)]


def dump(obj, kind, version="1"):
    """Serialize params, a vector or a pair dict back to document text."""
    if kind == "hermitian2":
        payload = {"p": obj.p, "m": obj.m, "a": _oct_list(obj.a)}
    elif kind == "hermitian3":
        payload = {"p": obj.p, "m": obj.m, "n": obj.n,
                   "a": _oct_list(obj.a), "b": _oct_list(obj.b), "c": _oct_list(obj.c)}
    elif kind == "vector":
        payload = [_oct_list(x) for x in obj]
    elif kind == "pair":
        payload = {"vector": [_oct_list(x) for x in obj["vector"]],
                   "lambda": _oct_list(obj["lambda"]), "side": obj.get("side", "right")}
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return json.dumps({"version": version, "kind": kind, "payload": payload})
