"""Bit-exact checkpoint files.

Layout: one framing line ``SKILLCKPT <version> <header_bytes>``, a JSON
header (format version, config echo, array name/shape/byte-offset table,
payload digest), a newline, then the raw payload of little-endian IEEE-754
float64 values in header order.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .agent import NETWORK_NAMES, Checkpoint, TrainConfig
from .env import EnvConfig

MAGIC = "SKILLCKPT"
FORMAT_VERSION = 1


class CheckpointError(RuntimeError):
    """Unreadable, corrupt, or wrong-format checkpoint file."""


def save_checkpoint(checkpoint: Checkpoint, path) -> None:
    chunks = []
    table = []
    offset = 0
    for net in NETWORK_NAMES:
        for key, arr in checkpoint.params[net].items():
            raw = np.ascontiguousarray(arr, dtype="<f8").tobytes()
            table.append({"name": f"{net}/{key}", "shape": list(arr.shape), "offset": offset})
            chunks.append(raw)
            offset += len(raw)
    payload = b"".join(chunks)
    header = {
        "format_version": FORMAT_VERSION,
        "payload_sha256": hashlib.sha256(payload).hexdigest(),
        "episodes_completed": checkpoint.episodes_completed,
        "env_config": asdict(checkpoint.env_config),
        "train_config": asdict(checkpoint.train_config),
        "arrays": table,
    }
    header_bytes = json.dumps(header, indent=2).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(f"{MAGIC} {FORMAT_VERSION} {len(header_bytes)}\n".encode("ascii"))
        fh.write(header_bytes)
        fh.write(b"\n")
        fh.write(payload)


def load_checkpoint(path) -> Checkpoint:
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"checkpoint file not found: {path}")
    with open(path, "rb") as fh:
        frame = fh.readline()
        parts = frame.decode("ascii", errors="replace").split()
        if len(parts) != 3 or parts[0] != MAGIC:
            raise CheckpointError(f"not a checkpoint file: {path}")
        if int(parts[1]) != FORMAT_VERSION:
            raise CheckpointError(f"unsupported checkpoint format version {parts[1]}")
        header_len = int(parts[2])
        header_bytes = fh.read(header_len)
        if len(header_bytes) != header_len or fh.read(1) != b"\n":
            raise CheckpointError(f"truncated checkpoint header: {path}")
        try:
            header = json.loads(header_bytes)
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"corrupt checkpoint header: {exc}") from exc
        payload = fh.read()

    digest = hashlib.sha256(payload).hexdigest()
    if digest != header["payload_sha256"]:
        raise CheckpointError(
            f"payload digest mismatch in {path}: header says {header['payload_sha256']}, "
            f"payload hashes to {digest}"
        )

    params = {name: {} for name in NETWORK_NAMES}
    for entry in header["arrays"]:
        net, key = entry["name"].split("/", 1)
        if net not in params:
            raise CheckpointError(f"unknown network {net!r} in checkpoint table")
        shape = tuple(entry["shape"])
        count = int(np.prod(shape)) if shape else 1
        arr = np.frombuffer(payload, dtype="<f8", count=count,
                            offset=entry["offset"]).reshape(shape).copy()
        params[net][key] = arr
    return Checkpoint(
        env_config=EnvConfig(**header["env_config"]),
        train_config=TrainConfig(**header["train_config"]),
        params=params,
        episodes_completed=header["episodes_completed"],
    )
