"""Small shared helpers: stable hashing, canonical JSON, float formatting.

The FNV-1a hash is used both to derive per-task RNG substreams and to key
cache files / experiment configs.  It is implemented bit-for-bit (64-bit,
offset basis 0xcbf29ce484222325, prime 0x100000001b3) so hashes are stable
across platforms and Python versions.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash of a byte string."""
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


def substream_seed(master_seed: int, label: str) -> int:
    """Derive a task seed from a master seed and a text label.

    The master seed is folded in as 8 little-endian bytes followed by the
    UTF-8 label, so distinct labels give independent, reproducible streams.
    """
    payload = (master_seed & _MASK64).to_bytes(8, "little") + label.encode("utf-8")
    return fnv1a64(payload)


def _json_default(obj: Any):
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not canonically serializable: {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    """Canonical JSON text: sorted keys, minimal separators, repr floats.

    Numpy scalars are accepted and serialized as their Python equivalents.
    """
    return json.dumps(
        obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_json_default
    )


def config_digest(obj: Any) -> str:
    """Hex FNV-1a-64 digest of an object's canonical JSON form."""
    return f"{fnv1a64(canonical_json(obj).encode('utf-8')):016x}"


def format_float(x: float) -> str:
    """Shortest decimal string that round-trips the float exactly."""
    return repr(float(x))
