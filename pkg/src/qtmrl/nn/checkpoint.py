"""Versioned binary checkpoints: JSON header plus raw little-endian float64.

Layout: magic ``QTMCKPT1`` | uint64 header length | UTF-8 JSON header |
concatenated array payloads. The header carries the format version, a table
of (name, shape, dtype, byte offset, byte length) and arbitrary JSON
metadata. float64 arrays round-trip bit-exactly; byte payloads are stored
raw (used for RNG state).
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

__all__ = ["save_checkpoint", "load_checkpoint"]

MAGIC = b"QTMCKPT1"
VERSION = 1


def save_checkpoint(path: str | Path, arrays: dict[str, np.ndarray], metadata: dict | None = None) -> None:
    path = Path(path)
    table = []
    payloads = []
    offset = 0
    for name, arr in arrays.items():
        if isinstance(arr, (bytes, bytearray)):
            buf = bytes(arr)
            table.append({"name": name, "shape": [len(buf)], "dtype": "bytes", "offset": offset, "nbytes": len(buf)})
        else:
            a = np.ascontiguousarray(arr, dtype=np.float64)
            buf = a.tobytes()
            table.append(
                {"name": name, "shape": list(a.shape), "dtype": "float64", "offset": offset, "nbytes": len(buf)}
            )
        payloads.append(buf)
        offset += len(buf)
    header = json.dumps({"version": VERSION, "table": table, "metadata": metadata or {}}).encode()
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(len(header).to_bytes(8, "little"))
        fh.write(header)
        for buf in payloads:
            fh.write(buf)
    os.replace(tmp, path)


def load_checkpoint(path: str | Path) -> tuple[dict[str, np.ndarray], dict]:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != MAGIC:
            raise ValueError(f"{path}: not a checkpoint file")
        header_len = int.from_bytes(fh.read(8), "little")
        header = json.loads(fh.read(header_len).decode())
        if header["version"] != VERSION:
            raise ValueError(f"{path}: unsupported checkpoint version {header['version']}")
        body = fh.read()
    arrays: dict[str, np.ndarray] = {}
    for entry in header["table"]:
        raw = body[entry["offset"] : entry["offset"] + entry["nbytes"]]
        if entry["dtype"] == "bytes":
            arrays[entry["name"]] = raw
        else:
            arrays[entry["name"]] = np.frombuffer(raw, dtype=np.float64).reshape(entry["shape"]).copy()
    return arrays, header["metadata"]
