"""Run-length window codec for configuration bitstreams.

Bitstreams move through the simulator as a sequence of fixed-size
windows so the configuration path never holds a whole decompressed
stream in memory.  Each window is compressed independently into
(count, value) byte pairs, count in 1..255; runs longer than 255 bytes
are split across pairs.  Only the final window of a stream may be
shorter than the stream's window_size.

The pair wire format is the stable contract here: a smarter codec can
replace this one as long as it keeps the window interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CodecError, EmptyWindow, LengthMismatch, MalformedPairs

DEFAULT_WINDOW_SIZE = 4096
MAX_RUN = 255

# below this many bytes the plain loop beats numpy's per-call overhead
_VECTOR_MIN = 192


@dataclass
class CompressedStream:
    """A compressed bitstream: header fields plus one payload per window."""

    window_count: int
    window_size: int
    behavior_id: int
    total_uncompressed: int
    windows: list[bytes]

    def window_length(self, index: int) -> int:
        """Uncompressed length of window `index` (only the last may be short)."""
        if index == self.window_count - 1:
            return self.total_uncompressed - index * self.window_size
        return self.window_size


def compress_window(raw: bytes) -> bytes:
    """Compress one window into (count, value) pairs.

    Raises EmptyWindow on zero-length input.  Output may be larger than
    the input (pathological data); there is no raw fallback mode.
    """
    n = len(raw)
    if n == 0:
        raise EmptyWindow("cannot compress an empty window")
    if n == 1:
        return bytes((1, raw[0]))
    if n >= _VECTOR_MIN:
        return _compress_vector(raw)
    return _compress_scalar(raw)


def _compress_scalar(raw: bytes) -> bytes:
    out = bytearray()
    prev = raw[0]
    run = 1
    for b in memoryview(raw)[1:]:
        if b == prev and run < MAX_RUN:
            run += 1
        else:
            out.append(run)
            out.append(prev)
            prev = b
            run = 1
    out.append(run)
    out.append(prev)
    return bytes(out)


def _compress_vector(raw: bytes) -> bytes:
    a = np.frombuffer(raw, dtype=np.uint8)
    change = np.flatnonzero(a[1:] != a[:-1]) + 1
    starts = np.concatenate(([0], change))
    lengths = np.diff(np.concatenate((starts, [a.size])))
    values = a[starts]
    # split runs longer than 255 into full pairs plus a remainder pair
    full, rem = np.divmod(lengths, MAX_RUN)
    pairs_per_run = full + (rem > 0)
    total_pairs = int(pairs_per_run.sum())
    counts = np.full(total_pairs, MAX_RUN, dtype=np.uint8)
    last_pair = np.cumsum(pairs_per_run) - 1
    has_rem = rem > 0
    counts[last_pair[has_rem]] = rem[has_rem].astype(np.uint8)
    out = np.empty(total_pairs * 2, dtype=np.uint8)
    out[0::2] = counts
    out[1::2] = np.repeat(values, pairs_per_run)
    return out.tobytes()


def decompress_window(compressed: bytes, expected_len: int) -> bytes:
    """Expand (count, value) pairs; the result must be exactly expected_len bytes.

    Raises MalformedPairs on an odd byte count or a zero count byte,
    LengthMismatch when the expansion disagrees with expected_len.
    """
    n = len(compressed)
    if n % 2:
        raise MalformedPairs(f"payload of {n} bytes is not whole pairs")
    if n == 2:
        count, value = compressed[0], compressed[1]
        if count == 0:
            raise MalformedPairs("zero run count at pair 0")
        if count != expected_len:
            raise LengthMismatch(f"expanded to {count} bytes, expected {expected_len}")
        return bytes([value]) * count
    if n >= _VECTOR_MIN:
        return _decompress_vector(compressed, expected_len)
    return _decompress_scalar(compressed, expected_len)


def _decompress_scalar(compressed: bytes, expected_len: int) -> bytes:
    out = bytearray()
    for i in range(0, len(compressed), 2):
        count = compressed[i]
        if count == 0:
            raise MalformedPairs(f"zero run count at pair {i // 2}")
        out += bytes([compressed[i + 1]]) * count
    if len(out) != expected_len:
        raise LengthMismatch(f"expanded to {len(out)} bytes, expected {expected_len}")
    return bytes(out)


def _decompress_vector(compressed: bytes, expected_len: int) -> bytes:
    a = np.frombuffer(compressed, dtype=np.uint8)
    counts = a[0::2]
    zero = np.flatnonzero(counts == 0)
    if zero.size:
        raise MalformedPairs(f"zero run count at pair {int(zero[0])}")
    out = np.repeat(a[1::2], counts)
    if out.size != expected_len:
        raise LengthMismatch(f"expanded to {out.size} bytes, expected {expected_len}")
    return out.tobytes()


def compress_stream(raw: bytes, window_size: int = DEFAULT_WINDOW_SIZE,
                    behavior_id: int = 0) -> CompressedStream:
    """Split raw into windows of window_size bytes and compress each independently."""
    if window_size < 1:
        raise ValueError(f"window_size must be >= 1, got {window_size}")
    total = len(raw)
    if total == 0:
        raise EmptyWindow("cannot compress an empty bitstream")
    view = memoryview(raw)
    if window_size == 1:
        # every window is a single byte; skip the per-window call overhead
        windows = [bytes((1, b)) for b in raw]
    else:
        windows = [compress_window(view[i:i + window_size])
                   for i in range(0, total, window_size)]
    return CompressedStream(
        window_count=math.ceil(total / window_size),
        window_size=window_size,
        behavior_id=behavior_id,
        total_uncompressed=total,
        windows=windows,
    )


def decompress_stream(stream: CompressedStream) -> Iterator[bytes]:
    """Yield decompressed windows one at a time, in order.

    Window k is expanded only when requested, touching only window k's
    payload; a corrupt later window fails at its own position and does
    not disturb windows already yielded.
    """
    if len(stream.windows) != stream.window_count:
        raise LengthMismatch(
            f"stream declares {stream.window_count} windows, carries {len(stream.windows)}")
    for k, payload in enumerate(stream.windows):
        expected = stream.window_length(k)
        if not 1 <= expected <= stream.window_size:
            raise LengthMismatch(
                f"window {k}: header implies window of {expected} bytes")
        try:
            yield decompress_window(payload, expected)
        except CodecError as exc:
            raise type(exc)(f"window {k}: {exc}") from None
