"""Parameter checkpoint file.

Layout (little-endian throughout):

    magic  4s   = "GJW1"
    count  u32  number of tensors
    per tensor: rank u32, dims u32 * rank, data f32 * prod(dims)
    optionally, a trailing metadata block: length u32 + UTF-8 JSON

Weights are stored in float32 regardless of the in-memory training precision.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .tensor import Tensor

__all__ = ["save_checkpoint", "load_checkpoint", "CheckpointError"]

MAGIC = b"GJW1"


class CheckpointError(IOError):
    """Malformed or truncated checkpoint file."""


def save_checkpoint(path, params, metadata: dict | None = None) -> None:
    """Write parameter tensors and an optional JSON metadata block."""
    arrays = [p.data if isinstance(p, Tensor) else np.asarray(p) for p in params]
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<I", len(arrays)))
        for a in arrays:
            f.write(struct.pack("<I", a.ndim))
            f.write(struct.pack(f"<{a.ndim}I", *a.shape))
            f.write(np.ascontiguousarray(a, dtype="<f4").tobytes())
        if metadata is not None:
            blob = json.dumps(metadata, sort_keys=True).encode("utf-8")
            f.write(struct.pack("<I", len(blob)))
            f.write(blob)


def _read_exact(f, n: int, what: str) -> bytes:
    buf = f.read(n)
    if len(buf) != n:
        raise CheckpointError(f"truncated checkpoint while reading {what}")
    return buf


def load_checkpoint(path) -> tuple[list[np.ndarray], dict | None]:
    """Read tensors (as float32 arrays) plus the metadata block if present."""
    with open(path, "rb") as f:
        if _read_exact(f, 4, "magic") != MAGIC:
            raise CheckpointError(f"bad magic in {path}; not a GJW1 checkpoint")
        (count,) = struct.unpack("<I", _read_exact(f, 4, "tensor count"))
        arrays = []
        for i in range(count):
            (rank,) = struct.unpack("<I", _read_exact(f, 4, f"tensor {i} rank"))
            dims = struct.unpack(f"<{rank}I", _read_exact(f, 4 * rank, f"tensor {i} dims"))
            n = int(np.prod(dims)) if rank else 1
            raw = _read_exact(f, 4 * n, f"tensor {i} data")
            arrays.append(np.frombuffer(raw, dtype="<f4").reshape(dims).copy())
        tail = f.read(4)
        if not tail:
            return arrays, None
        (mlen,) = struct.unpack("<I", tail)
        blob = _read_exact(f, mlen, "metadata")
        return arrays, json.loads(blob.decode("utf-8"))
