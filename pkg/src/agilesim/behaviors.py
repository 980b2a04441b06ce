"""Registry of deterministic stand-ins for synthesized FPGA logic.

Each behavior is a pure bytes -> bytes function keyed by a 32-bit id.
A resident algorithm executes by running its behavior on the staged
input buffer, padding included, so results are reproducible and easy
to check against independent references.

Registered ids:

    1  crc32           CRC-32, IEEE 802.3 reflected polynomial, 4-byte LE result
    2  xor_checksum    single-byte XOR fold over the input
    3  vector_add_one  per-byte wrapping increment, same length as input
"""

from __future__ import annotations

import random
from typing import Callable

from .errors import UnknownBehavior

CRC32 = 1
XOR_CHECKSUM = 2
VECTOR_ADD_ONE = 3


def _make_crc_table() -> list[int]:
    table = []
    for n in range(256):
        c = n
        for _ in range(8):
            c = (c >> 1) ^ 0xEDB88320 if c & 1 else c >> 1
        table.append(c)
    return table


_CRC_TABLE = _make_crc_table()


def _crc32(data: bytes) -> bytes:
    crc = 0xFFFFFFFF
    for b in data:
        crc = _CRC_TABLE[(crc ^ b) & 0xFF] ^ (crc >> 8)
    return (crc ^ 0xFFFFFFFF).to_bytes(4, "little")


def _xor_checksum(data: bytes) -> bytes:
    acc = 0
    for b in data:
        acc ^= b
    return bytes([acc])


def _vector_add_one(data: bytes) -> bytes:
    return bytes((b + 1) & 0xFF for b in data)


_REGISTRY: dict[int, Callable[[bytes], bytes]] = {
    CRC32: _crc32,
    XOR_CHECKSUM: _xor_checksum,
    VECTOR_ADD_ONE: _vector_add_one,
}


def registered_ids() -> list[int]:
    return sorted(_REGISTRY)


def require(behavior_id: int) -> None:
    """Raise UnknownBehavior unless behavior_id is registered."""
    if behavior_id not in _REGISTRY:
        raise UnknownBehavior(f"behavior {behavior_id} not registered "
                              f"(known: {registered_ids()})")


def run(behavior_id: int, data: bytes) -> bytes:
    """Execute a registered behavior on data.  Pure and deterministic."""
    require(behavior_id)
    return _REGISTRY[behavior_id](data)


def synth_bitstream(behavior_id: int, frame_count: int, frame_size: int,
                    seed: int = 0) -> bytes:
    """Produce frame_count x frame_size bytes of pseudo-configuration data.

    The first 4 bytes encode behavior_id little-endian (truncated if the
    bitstream is shorter than that); the rest is a deterministic,
    mostly-zero pattern so the run-length codec has realistic sparse
    input.  Deterministic in all four arguments.
    """
    require(behavior_id)
    if frame_count < 1 or frame_size < 1:
        raise ValueError("frame_count and frame_size must be >= 1")
    total = frame_count * frame_size
    header = behavior_id.to_bytes(4, "little")[:total]
    # str seeds hash via sha512 inside random.Random: stable across runs
    rng = random.Random(f"synth:{behavior_id}:{frame_count}:{frame_size}:{seed}")
    body = bytes(rng.randrange(256) if rng.random() < 0.3 else 0
                 for _ in range(total - len(header)))
    return header + body
