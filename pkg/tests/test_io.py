import json

import numpy as np
import pytest

from octeig import errors
from octeig.io import InputDocument, dump, load, parse_input
from octeig.linalg import Hermitian2Params, Hermitian3Params, vector
from octeig.octonion import parse


def doc(kind, payload, version="1"):
    return json.dumps({"version": version, "kind": kind, "payload": payload})


def test_hermitian2():
    d = parse_input(doc("hermitian2", {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0, 0]}).encode())
    assert isinstance(d, InputDocument) and d.kind == "hermitian2"
    h = d.payload
    assert (h.p, h.m) == (1.0, 1.0) and np.array_equal(h.a, parse("-i"))


def test_vector():
    d = parse_input(doc("vector", [[0, 0, 1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]]))
    assert np.array_equal(d.payload, vector("j", "l"))


def test_hermitian3_and_pair():
    z = [0] * 8
    d = parse_input(doc("hermitian3", {"p": 1, "m": 2, "n": 3, "a": z, "b": z, "c": [0, 1] + [0] * 6}))
    assert isinstance(d.payload, Hermitian3Params) and np.array_equal(d.payload.c, parse("i"))
    d = parse_input(doc("pair", {"vector": [[0, 0, 1] + [0] * 5, [0] * 7 + [1]], "lambda": [1, 0, 0, 0, 1, 0, 0, 0]}))
    assert d.payload["side"] == "right" and np.array_equal(d.payload["lambda"], parse("1+kl"))


@pytest.mark.parametrize("text, where", [
    (doc("hermitian2", {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0]}), "payload.a"),
    (doc("hermitian2", {"p": 1, "m": 1, "a": [0] * 8, "extra": 1}), "unknown field"),
    (doc("hermitian2", {"p": 1, "a": [0] * 8}), "missing field"),
    (doc("hermitian2", {"p": "1", "m": 1, "a": [0] * 8}), "payload.p"),
    (doc("hermitian2", {"p": True, "m": 1, "a": [0] * 8}), "payload.p"),
    (doc("vector", [[0] * 8, [0] * 7 + ["x"]]), "payload[1][7]"),
    (doc("vector", []), "payload"),
    (doc("matrix", []), "kind"),
    (doc("pair", {"vector": [[0] * 8], "lambda": [0] * 8, "side": "up"}), "payload.side"),
    ('{"version": "1", "kind": "vector", "payload": [[0,0,0,0,0,0,0,NaN]]}', "not finite"),
    ('{"version": "1",\n "kind": }', "line 2"),
    ('{"version": "1", "kind": "vector"}', "missing field"),
    ('[]', "document"),
])
def test_rejects(text, where):
    with pytest.raises(errors.ParseError, match=where.replace("[", r"\[").replace("]", r"\]")):
        parse_input(text)


def test_version():
    with pytest.raises(errors.VersionUnsupported):
        parse_input(doc("vector", [[0] * 8], version="2"))
    with pytest.raises(errors.ParseError):
        parse_input(json.dumps({"version": 1, "kind": "vector", "payload": [[0] * 8]}))


def test_not_utf8():
    with pytest.raises(errors.ParseError):
        parse_input(b"\xff\xfe")


def test_round_trip(tmp_path, rng):
    h2 = Hermitian2Params(0.25, -1.5, rng.uniform(-1, 1, 8))
    back = parse_input(dump(h2, "hermitian2")).payload
    assert back.p == h2.p and np.array_equal(back.a, h2.a)
    h3 = Hermitian3Params(1, 2, 3, *rng.uniform(-1, 1, (3, 8)))
    path = tmp_path / "h3.json"
    path.write_text(dump(h3, "hermitian3"))
    back3 = load(path).payload
    assert all(np.array_equal(getattr(back3, k), getattr(h3, k)) for k in "abc")
    v = rng.uniform(-1, 1, (3, 8))
    assert np.array_equal(parse_input(dump(v, "vector")).payload, v)
    d = parse_input(dump({"vector": v, "lambda": v[0], "side": "left"}, "pair"))
    assert d.payload["side"] == "left"
    assert parse_input(d.to_json()).payload["side"] == "left"
