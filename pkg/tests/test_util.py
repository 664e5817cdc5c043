import json
import math

from hypothesis import given
from hypothesis import strategies as st

from borb.util import canonical_json, config_digest, fnv1a64, format_float, substream_seed

# published FNV-1a 64-bit reference vectors
FNV_VECTORS = {
    b"": 0xCBF29CE484222325,
    b"a": 0xAF63DC4C8601EC8C,
    b"foobar": 0x85944171F73967E8,
}


def test_fnv1a64_reference_vectors():
    for data, want in FNV_VECTORS.items():
        assert fnv1a64(data) == want


def test_fnv1a64_independent_reimplementation():
    def slow(data):
        h = 0xCBF29CE484222325
        for b in data:
            h = ((h ^ b) * 0x100000001B3) % 2**64
        return h

    for data in (b"\x00", b"\xff" * 9, b"hello world", bytes(range(256))):
        assert fnv1a64(data) == slow(data)


def test_substream_seed_varies_with_label_and_master():
    s = substream_seed(7, "p=4/i=0")
    assert s == substream_seed(7, "p=4/i=0")
    assert s != substream_seed(7, "p=4/i=1")
    assert s != substream_seed(8, "p=4/i=0")
    assert 0 <= s < 2**64


def test_canonical_json_sorts_and_is_stable():
    a = canonical_json({"b": 1, "a": [1.5, {"y": None, "x": True}]})
    b = canonical_json({"a": [1.5, {"x": True, "y": None}], "b": 1})
    assert a == b
    assert a == '{"a":[1.5,{"x":true,"y":null}],"b":1}'
    assert config_digest({"b": 1, "a": 2}) == config_digest({"a": 2, "b": 1})
    assert len(config_digest({})) == 16


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_float_round_trips(x):
    assert float(format_float(x)) == x


def test_format_float_matches_json():
    for x in (0.1, 1 / 3, 2.0**-52, 1e300, -0.0):
        assert json.loads(json.dumps(x)) == float(format_float(x))
        assert math.copysign(1.0, float(format_float(x))) == math.copysign(1.0, x)
