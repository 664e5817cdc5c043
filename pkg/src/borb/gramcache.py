"""Binary cache for Gram matrices keyed by the full space resolution key.

File format "BORBGRAM": 8-byte magic, two little-endian uint64 dimension
fields, then row-major little-endian float64 payload.  Complex matrices
are stored as their real float64 view (d rows, 2d columns, interleaved
re/im), so a d x d Gram has header dims (d, 2d).  Corrupt or truncated
files are treated as misses with a warning; they are never trusted.
"""

from __future__ import annotations

import logging
import struct
from pathlib import Path

import numpy as np

from .util import fnv1a64

__all__ = ["GramCache", "MAGIC"]

MAGIC = b"BORBGRAM"

log = logging.getLogger(__name__)


class GramCache:
    """Directory-backed store; file names are FNV-1a-64 digests of the key."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{fnv1a64(key.encode('utf-8')):016x}.borbgram"

    def load(self, key: str, dim: int) -> np.ndarray | None:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            raw = path.read_bytes()
        except OSError as exc:
            log.warning("cache read failed for %s: %s", path.name, exc)
            return None
        if len(raw) < 24 or raw[:8] != MAGIC:
            log.warning("cache file %s has a bad header; ignoring it", path.name)
            return None
        rows, cols = struct.unpack("<QQ", raw[8:24])
        if rows != dim or cols != 2 * dim or len(raw) != 24 + 8 * rows * cols:
            log.warning("cache file %s has inconsistent dimensions; ignoring it", path.name)
            return None
        flat = np.frombuffer(raw, dtype="<f8", offset=24).reshape(rows, cols)
        return flat.view(np.complex128).astype(np.complex128, copy=True).reshape(dim, dim)

    def store(self, key: str, gram: np.ndarray) -> Path:
        gram = np.ascontiguousarray(gram, dtype=np.complex128)
        d = gram.shape[0]
        view = gram.view(np.float64).reshape(d, 2 * d)
        payload = view.astype("<f8", copy=False).tobytes(order="C")
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<QQ", d, 2 * d))
            fh.write(payload)
        tmp.replace(path)
        return path
