"""Bit-exact ROM image: compressed bitstreams plus a function record table.

Layout (all integers little-endian):

    offset 0   magic "AROM" (0x41 0x52 0x4F 0x4D)
    offset 4   version  u16 = 1
    offset 6   reserved u16 = 0
    offset 8   rom_size u32
    offset 12  record_count u32
    offset 16  bitstream region, containers packed ascending in input order
    ...        free space
    high end   record table, record i at [rom_size - (i+1)*32, rom_size - i*32)

Each 32-byte record is {function_id u32, start_offset u32, compressed_size
u32, input_words u32, output_words u32, frame_count u32, reserved u64 = 0}.

A per-function bitstream container is {window_count u32, window_size u32,
behavior_id u32, total_uncompressed u32}, then window_count blocks of
{compressed_len u32, payload}.  The container's total length must equal the
record's compressed_size.  Whether total_uncompressed matches the target
fabric's frame geometry is checked at load time, not here.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Sequence

from . import codec
from .codec import CompressedStream
from .errors import (
    BadMagic,
    ContainerSizeMismatch,
    DuplicateFunctionId,
    MalformedRecord,
    OverlappingRegions,
    RomOverflow,
    TruncatedContainer,
    TruncatedImage,
    UnknownFunction,
    UnsupportedVersion,
)

MAGIC = b"AROM"
VERSION = 1
HEADER_SIZE = 16
RECORD_SIZE = 32

_HEADER = struct.Struct("<4sHHII")
_RECORD = struct.Struct("<6IQ")
_CONTAINER_HEADER = struct.Struct("<4I")
_U32 = struct.Struct("<I")
_U32_MAX = 0xFFFFFFFF


@dataclass(frozen=True)
class FunctionRecord:
    """One record table entry; I/O sizes are counted in bus-width words."""

    function_id: int
    start_offset: int
    compressed_size: int
    input_words: int
    output_words: int
    frame_count: int


@dataclass(frozen=True)
class RomFunction:
    """Build-side description of one function: record fields plus its raw bitstream."""

    function_id: int
    behavior_id: int
    input_words: int
    output_words: int
    frame_count: int
    bitstream: bytes


@dataclass
class RomImage:
    """Parsed, immutable view of a ROM image."""

    rom_size: int
    records: list[FunctionRecord]
    payload: bytes  # bitstream region bytes, offsets 16 .. record table floor

    @property
    def record_floor(self) -> int:
        return self.rom_size - RECORD_SIZE * len(self.records)

    @property
    def bitstream_end(self) -> int:
        if not self.records:
            return HEADER_SIZE
        return max(r.start_offset + r.compressed_size for r in self.records)

    def lookup(self, function_id: int) -> FunctionRecord:
        """Return the record for function_id, or raise UnknownFunction."""
        for record in self.records:
            if record.function_id == function_id:
                return record
        raise UnknownFunction(f"function {function_id} not in record table")

    def fetch_bitstream(self, record: FunctionRecord) -> CompressedStream:
        """Slice out record's container and parse it into a CompressedStream."""
        if record not in self.records:
            raise ValueError("record does not belong to this ROM image")
        lo = record.start_offset - HEADER_SIZE
        return decode_container(self.payload[lo:lo + record.compressed_size])


def encode_container(stream: CompressedStream) -> bytes:
    """Serialize a CompressedStream into the on-ROM container layout."""
    parts = [_CONTAINER_HEADER.pack(stream.window_count, stream.window_size,
                                    stream.behavior_id, stream.total_uncompressed)]
    for payload in stream.windows:
        parts.append(_U32.pack(len(payload)))
        parts.append(payload)
    return b"".join(parts)


def decode_container(data: bytes) -> CompressedStream:
    """Parse a container slice back into a CompressedStream.

    Raises TruncatedContainer when the slice ends early and
    ContainerSizeMismatch when its bookkeeping disagrees with the slice
    length or the stream invariants.
    """
    if len(data) < _CONTAINER_HEADER.size:
        raise TruncatedContainer(
            f"container of {len(data)} bytes is shorter than its 16-byte header")
    window_count, window_size, behavior_id, total = _CONTAINER_HEADER.unpack_from(data)
    if window_size < 1 or total < 1:
        raise ContainerSizeMismatch(
            f"container declares window_size={window_size}, total_uncompressed={total}")
    if window_count != -(-total // window_size):
        raise ContainerSizeMismatch(
            f"window_count {window_count} inconsistent with "
            f"{total} bytes at window_size {window_size}")
    windows = []
    offset = _CONTAINER_HEADER.size
    for k in range(window_count):
        if offset + 4 > len(data):
            raise TruncatedContainer(f"window {k}: length field runs past container end")
        (length,) = _U32.unpack_from(data, offset)
        offset += 4
        if offset + length > len(data):
            raise TruncatedContainer(f"window {k}: payload runs past container end")
        windows.append(data[offset:offset + length])
        offset += length
    if offset != len(data):
        raise ContainerSizeMismatch(
            f"{len(data) - offset} trailing bytes after the last window")
    return CompressedStream(window_count, window_size, behavior_id, total, windows)


def build_rom(functions: Sequence[RomFunction], rom_size: int,
              window_size: int = codec.DEFAULT_WINDOW_SIZE) -> bytes:
    """Build a byte-exact ROM image.

    Containers are packed contiguously from offset 16 in input order;
    records are written descending from rom_size.  Deterministic: the
    same inputs always produce the same bytes.
    """
    seen: set[int] = set()
    for fn in functions:
        if fn.function_id in seen:
            raise DuplicateFunctionId(f"function id {fn.function_id} appears twice")
        seen.add(fn.function_id)
        _check_u32("function_id", fn.function_id)
        _check_u32("behavior_id", fn.behavior_id)
        for name in ("input_words", "output_words", "frame_count"):
            value = getattr(fn, name)
            _check_u32(name, value)
            if value < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")

    containers = [
        encode_container(codec.compress_stream(fn.bitstream, window_size, fn.behavior_id))
        for fn in functions
    ]
    floor = rom_size - RECORD_SIZE * len(functions)
    end = HEADER_SIZE + sum(len(c) for c in containers)
    if floor < HEADER_SIZE or end > floor:
        raise RomOverflow(
            f"need {end} bytes of bitstream region plus "
            f"{RECORD_SIZE * len(functions)} bytes of records; rom_size {rom_size} too small")

    image = bytearray(rom_size)
    _HEADER.pack_into(image, 0, MAGIC, VERSION, 0, rom_size, len(functions))
    offset = HEADER_SIZE
    for i, (fn, container) in enumerate(zip(functions, containers)):
        image[offset:offset + len(container)] = container
        _RECORD.pack_into(image, rom_size - (i + 1) * RECORD_SIZE,
                          fn.function_id, offset, len(container),
                          fn.input_words, fn.output_words, fn.frame_count, 0)
        offset += len(container)
    return bytes(image)


def parse_rom(image: bytes) -> RomImage:
    """Parse and validate a ROM image; the inverse of build_rom."""
    if len(image) < HEADER_SIZE:
        raise TruncatedImage(f"image of {len(image)} bytes lacks a 16-byte header")
    magic, version, _reserved, rom_size, record_count = _HEADER.unpack_from(image)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedVersion(f"version {version}, expected {VERSION}")
    if len(image) != rom_size:
        raise TruncatedImage(
            f"image is {len(image)} bytes but header declares rom_size {rom_size}")
    floor = rom_size - RECORD_SIZE * record_count
    if floor < HEADER_SIZE:
        raise OverlappingRegions(
            f"{record_count} records leave no room below offset {HEADER_SIZE}")

    records = []
    seen: set[int] = set()
    for i in range(record_count):
        position = rom_size - (i + 1) * RECORD_SIZE
        (function_id, start_offset, compressed_size,
         input_words, output_words, frame_count, reserved) = _RECORD.unpack_from(image, position)
        if reserved != 0:
            raise MalformedRecord(f"record {i} at offset {position}: reserved field not zero")
        if min(input_words, output_words, frame_count) < 1:
            raise MalformedRecord(f"record {i} at offset {position}: zero-valued size field")
        if function_id in seen:
            raise MalformedRecord(f"record {i} at offset {position}: "
                                  f"duplicate function id {function_id}")
        seen.add(function_id)
        if start_offset < HEADER_SIZE or start_offset + compressed_size > floor:
            raise OverlappingRegions(
                f"record {i}: container [{start_offset}, {start_offset + compressed_size}) "
                f"outside bitstream region [{HEADER_SIZE}, {floor})")
        records.append(FunctionRecord(function_id, start_offset, compressed_size,
                                      input_words, output_words, frame_count))
    return RomImage(rom_size=rom_size, records=records,
                    payload=bytes(image[HEADER_SIZE:floor]))


def _check_u32(name: str, value: int) -> None:
    if not 0 <= value <= _U32_MAX:
        raise ValueError(f"{name} must fit in an unsigned 32-bit field, got {value}")
