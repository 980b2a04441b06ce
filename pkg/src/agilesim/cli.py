"""Command-line front end: build ROM images, inspect them, replay traces.

    agilesim romgen  --out rom.bin --rom-size 65536 --frame-size 64 \
                     --func id=1,behavior=1,frames=4,in=3,out=1
    agilesim inspect rom.bin
    agilesim run     rom.bin trace.jsonl --frames 8 --frame-size 64 --stats stats.json

Trace files are UTF-8 lines, one JSON object per line with fields
op ("load" | "exec" | "stats" | "reset"), func (load/exec) and
input_hex (exec only, even-length hex).  Each exec's output is written
to stdout as one lowercase hex line.  The stats report is JSON with
sorted keys; producing it counts as one final stats request, so even an
empty trace reports requests=1.

Exit codes: 0 success, 1 usage error, 2 format error (bad ROM or trace
file), 3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import behaviors
from .controller import (
    DEFAULT_RAM_CAPACITY,
    BusConfig,
    Controller,
    Execute,
    LoadFunction,
    QueryStats,
    Reset,
)
from .codec import DEFAULT_WINDOW_SIZE
from .errors import (
    BadMagic,
    ContainerSizeMismatch,
    MalformedRecord,
    OverlappingRegions,
    SimError,
    TraceFormatError,
    TruncatedContainer,
    TruncatedImage,
    UnsupportedVersion,
)
from .fabric import Fabric, FabricConfig
from .rom import HEADER_SIZE, RECORD_SIZE, RomFunction, RomImage, build_rom, parse_rom

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_RUNTIME = 3

_FORMAT_ERRORS = (BadMagic, UnsupportedVersion, TruncatedImage, OverlappingRegions,
                  MalformedRecord, TruncatedContainer, ContainerSizeMismatch,
                  TraceFormatError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); usage errors are exit 1
        raise UsageError(message)


def _parse_func_spec(spec: str) -> dict[str, int]:
    keys = {"id": None, "behavior": None, "frames": 1, "in": 1, "out": 1}
    for item in spec.split(","):
        if "=" not in item:
            raise UsageError(f"--func: expected key=value, got {item!r}")
        key, _, value = item.partition("=")
        if key not in keys:
            raise UsageError(f"--func: unknown key {key!r}")
        try:
            keys[key] = int(value, 0)
        except ValueError:
            raise UsageError(f"--func: {key} needs an integer, got {value!r}") from None
    for key in ("id", "behavior"):
        if keys[key] is None:
            raise UsageError(f"--func: missing required key {key!r} in {spec!r}")
    return keys


def _print_records(rom: RomImage) -> None:
    print(f"records: {len(rom.records)}")
    for i, r in enumerate(rom.records):
        position = rom.rom_size - (i + 1) * RECORD_SIZE
        print(f"record {i} @ [{position}, {position + RECORD_SIZE}): "
              f"function_id={r.function_id} start_offset={r.start_offset} "
              f"compressed_size={r.compressed_size} input_words={r.input_words} "
              f"output_words={r.output_words} frame_count={r.frame_count}")


def cmd_romgen(args) -> int:
    functions = []
    for spec in args.func or []:
        f = _parse_func_spec(spec)
        bitstream = behaviors.synth_bitstream(f["behavior"], f["frames"],
                                              args.frame_size, args.seed)
        functions.append(RomFunction(function_id=f["id"], behavior_id=f["behavior"],
                                     input_words=f["in"], output_words=f["out"],
                                     frame_count=f["frames"], bitstream=bitstream))
    image = build_rom(functions, args.rom_size, args.window_size)
    Path(args.out).write_bytes(image)
    print(f"wrote {args.out}: {args.rom_size} bytes, {len(functions)} function(s)")
    _print_records(parse_rom(image))
    return EXIT_OK


def cmd_inspect(args) -> int:
    rom = parse_rom(Path(args.rom).read_bytes())
    used = rom.bitstream_end - HEADER_SIZE
    print("magic: AROM")
    print("version: 1")
    print(f"rom_size: {rom.rom_size}")
    print(f"header: [0, {HEADER_SIZE})")
    print(f"bitstream region: [{HEADER_SIZE}, {rom.bitstream_end}) "
          f"({used} bytes used, {rom.record_floor - rom.bitstream_end} free)")
    print(f"record table: [{rom.record_floor}, {rom.rom_size})")
    _print_records(rom)
    return EXIT_OK


def _parse_trace_event(line: str, line_number: int):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"line {line_number}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "op" not in obj:
        raise TraceFormatError(f"line {line_number}: event must be an object with an 'op' field")
    op = obj["op"]
    if op == "stats":
        return QueryStats()
    if op == "reset":
        return Reset()
    if op not in ("load", "exec"):
        raise TraceFormatError(f"line {line_number}: unknown op {op!r}")
    if not isinstance(obj.get("func"), int):
        raise TraceFormatError(f"line {line_number}: {op!r} needs an integer 'func'")
    if op == "load":
        return LoadFunction(obj["func"])
    input_hex = obj.get("input_hex", "")
    if not isinstance(input_hex, str) or len(input_hex) % 2:
        raise TraceFormatError(f"line {line_number}: input_hex must be even-length hex")
    try:
        data = bytes.fromhex(input_hex)
    except ValueError:
        raise TraceFormatError(f"line {line_number}: input_hex must be even-length hex") from None
    return Execute(obj["func"], data)


def cmd_run(args) -> int:
    rom = parse_rom(Path(args.rom).read_bytes())
    fab = Fabric(FabricConfig(total_frames=args.frames, frame_size=args.frame_size))
    ctrl = Controller(rom, fab, BusConfig(args.bus_width), ram_capacity=args.ram_cap)

    failure = None
    event_index = 0
    with open(args.trace, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                command = _parse_trace_event(line, line_number)
                response = ctrl.handle(command)
            except SimError as exc:
                failure = (event_index, exc)
                break
            if isinstance(command, Execute):
                print(response.output.hex())
            event_index += 1

    # the report itself is one final stats request
    ctrl.handle(QueryStats())
    if args.stats:
        Path(args.stats).write_text(
            json.dumps(ctrl.report(), sort_keys=True, indent=2) + "\n", encoding="utf-8")

    if failure is not None:
        index, exc = failure
        print(f"event {index}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FORMAT if isinstance(exc, _FORMAT_ERRORS) else EXIT_RUNTIME
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="agilesim",
                     description="Simulator of an algorithm-agile on-demand co-processor.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("romgen", help="build a ROM image from function specs")
    p.add_argument("--out", required=True, help="output ROM file")
    p.add_argument("--rom-size", type=int, default=65536, help="total ROM bytes (default 65536)")
    p.add_argument("--frame-size", type=int, default=64,
                   help="fabric frame size the bitstreams are synthesized for (default 64)")
    p.add_argument("--window-size", type=int, default=DEFAULT_WINDOW_SIZE,
                   help=f"compression window bytes (default {DEFAULT_WINDOW_SIZE})")
    p.add_argument("--seed", type=int, default=0, help="bitstream synthesis seed (default 0)")
    p.add_argument("--func", action="append", metavar="id=N,behavior=N[,frames=N,in=N,out=N]",
                   help="function spec; repeatable")
    p.set_defaults(func_cmd=cmd_romgen)

    p = sub.add_parser("inspect", help="dump a ROM image's header and record table")
    p.add_argument("rom", help="ROM file")
    p.set_defaults(func_cmd=cmd_inspect)

    p = sub.add_parser("run", help="replay a host-command trace against a fresh simulator")
    p.add_argument("rom", help="ROM file")
    p.add_argument("trace", help="trace file, one JSON event per line")
    p.add_argument("--frames", type=int, default=16, help="fabric frame count (default 16)")
    p.add_argument("--frame-size", type=int, default=64,
                   help="fabric frame size in bytes; must match romgen (default 64)")
    p.add_argument("--bus-width", type=int, default=4, help="interface bus word bytes (default 4)")
    p.add_argument("--ram-cap", type=int, default=DEFAULT_RAM_CAPACITY,
                   help="local RAM capacity in bytes (default 1 MiB)")
    p.add_argument("--stats", help="write the stats report JSON here")
    p.set_defaults(func_cmd=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func_cmd(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _FORMAT_ERRORS as exc:
        print(f"format error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (SimError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def console_main() -> None:
    sys.exit(main())
