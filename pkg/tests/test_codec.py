import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agilesim import codec
from agilesim.errors import EmptyWindow, LengthMismatch, MalformedPairs

from oracles import expand_pairs


# --- compress_window ---------------------------------------------------------


def test_single_byte_window():
    assert codec.compress_window(b"\x05") == b"\x01\x05"


def test_homogeneous_window():
    assert codec.compress_window(bytes([0x00] * 4)) == b"\x04\x00"


def test_run_longer_than_max_splits():
    out = codec.compress_window(bytes([0xAB] * 300))
    assert out == bytes([0xFF, 0xAB, 0x2D, 0xAB])
    assert expand_pairs(out) == bytes([0xAB] * 300)


def test_alternating_bytes_expand():
    raw = b"\x01\x02" * 8
    out = codec.compress_window(raw)
    assert out == b"\x01\x01\x01\x02" * 8


def test_empty_window_rejected():
    with pytest.raises(EmptyWindow):
        codec.compress_window(b"")


@given(st.binary(min_size=1, max_size=2048))
def test_window_round_trip(raw):
    packed = codec.compress_window(raw)
    assert len(packed) % 2 == 0
    counts = packed[0::2]
    assert min(counts) >= 1
    assert expand_pairs(packed) == raw
    assert codec.decompress_window(packed, len(raw)) == raw


@given(st.integers(min_value=1, max_value=600), st.integers(min_value=0, max_value=2**32))
def test_scalar_and_vector_paths_agree(length, seed):
    # straddles the _VECTOR_MIN threshold from both sides
    rng = random.Random(seed)
    raw = bytes(rng.choice((0, 0, 0, 1, rng.randrange(256))) for _ in range(length))
    assert codec._compress_scalar(raw) == bytes(codec._compress_vector(raw))


# --- decompress_window -------------------------------------------------------


def test_decompress_examples():
    assert codec.decompress_window(bytes([0x04, 0x00]), 4) == bytes(4)
    assert codec.decompress_window(bytes([0x01, 0x07, 0x02, 0x08]), 3) == b"\x07\x08\x08"


def test_decompress_length_mismatch():
    with pytest.raises(LengthMismatch):
        codec.decompress_window(bytes([0x03, 0x01]), 5)


def test_decompress_odd_length():
    with pytest.raises(MalformedPairs):
        codec.decompress_window(b"\x01\x02\x03", 1)


def test_decompress_zero_count():
    with pytest.raises(MalformedPairs):
        codec.decompress_window(b"\x00\x41", 0)
    with pytest.raises(MalformedPairs):
        codec.decompress_window(b"\x02\x41\x00\x42\x01\x43", 3)


def test_decompress_empty_pairs():
    # zero pairs is structurally fine; it just expands to nothing
    with pytest.raises(LengthMismatch):
        codec.decompress_window(b"", 4)


# --- streams -----------------------------------------------------------------


def test_stream_window_arithmetic():
    s = codec.compress_stream(bytes(10), window_size=4)
    assert s.window_count == 3
    assert s.window_size == 4
    assert s.total_uncompressed == 10
    # last window covers the 2-byte remainder
    assert codec.decompress_window(s.windows[-1], 2) == bytes(2)

    s = codec.compress_stream(bytes(8), window_size=8)
    assert s.window_count == 1


def test_stream_rejects_empty_input():
    with pytest.raises(EmptyWindow):
        codec.compress_stream(b"")
    with pytest.raises(ValueError):
        codec.compress_stream(b"x", window_size=0)


def test_stream_carries_behavior_id():
    s = codec.compress_stream(b"abc", window_size=2, behavior_id=7)
    assert s.behavior_id == 7
    assert s.window_length(0) == 2
    assert s.window_length(1) == 1  # the short tail window


@given(
    st.binary(min_size=1, max_size=4096),
    st.sampled_from([1, 3, 7, 64, 4096]),
)
@settings(max_examples=60)
def test_stream_round_trip(raw, window_size):
    stream = codec.compress_stream(raw, window_size=window_size)
    assert stream.window_count == -(-len(raw) // window_size)
    joined = b"".join(codec.decompress_stream(stream))
    assert joined == raw
    # oracle cross-check, window by window
    pieces = [
        expand_pairs(w) for w in stream.windows
    ]
    assert b"".join(pieces) == raw


def test_window_size_one_fast_path():
    raw = bytes(range(256))
    stream = codec.compress_stream(raw, window_size=1)
    assert stream.window_count == 256
    assert all(w == bytes([1, v]) for w, v in zip(stream.windows, raw))
    assert b"".join(codec.decompress_stream(stream)) == raw


def test_decompression_is_incremental():
    """A corrupt later window must not poison windows before it."""
    raw = bytes(100)
    stream = codec.compress_stream(raw, window_size=32)
    stream.windows[2] = b"\x00\x00"  # zero count: malformed
    it = codec.decompress_stream(stream)
    assert next(it) == bytes(32)
    assert next(it) == bytes(32)
    with pytest.raises(MalformedPairs) as err:
        next(it)
    assert "window 2" in str(err.value)


def test_decompress_stream_checks_window_count():
    stream = codec.compress_stream(bytes(10), window_size=4)
    stream.windows.pop()
    with pytest.raises(LengthMismatch):
        list(codec.decompress_stream(stream))


def test_decompress_stream_checks_total():
    stream = codec.compress_stream(bytes(10), window_size=4)
    stream.total_uncompressed = 11
    with pytest.raises(LengthMismatch):
        list(codec.decompress_stream(stream))


@pytest.mark.parametrize(
    "raw",
    [
        bytes(4096),
        bytes([0xFF] * 4096),
        bytes(range(256)) * 16,
        random.Random(1).randbytes(4096),
        bytes(random.Random(2).choice((0, 0, 0, 0, 0, 0, 0, 17)) for _ in range(4096)),
    ],
    ids=["zeros", "ones", "cycling", "random", "sparse"],
)
def test_pathological_inputs_round_trip(raw):
    stream = codec.compress_stream(raw)
    assert b"".join(codec.decompress_stream(stream)) == raw
