"""Host-facing microcontroller: command handling, local RAM, transfer sizing.

Commands arrive one at a time and are processed strictly in order.  All
host-visible data moves in whole bus words: inputs are zero-padded up to
input_words x bus_width (longer inputs are rejected), outputs are padded
or truncated to output_words x bus_width as declared by the function
record.  Counters track hits, misses, evictions, programmed frames and
byte traffic for the whole session.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Union

from .errors import InputOverrun, RamOverflow
from .fabric import Fabric
from .minios import MiniOs
from .rom import FunctionRecord, RomImage

DEFAULT_RAM_CAPACITY = 1 << 20


@dataclass(frozen=True)
class BusConfig:
    bus_width: int = 4

    def __post_init__(self):
        if self.bus_width < 1:
            raise ValueError("bus_width must be >= 1")


@dataclass
class LocalRam:
    capacity: int = DEFAULT_RAM_CAPACITY
    input_buffer: bytes = b""
    output_buffer: bytes = b""


# host command set
@dataclass(frozen=True)
class LoadFunction:
    function_id: int


@dataclass(frozen=True)
class Execute:
    function_id: int
    input: bytes = b""


@dataclass(frozen=True)
class QueryStats:
    pass


@dataclass(frozen=True)
class Reset:
    pass


HostCommand = Union[LoadFunction, Execute, QueryStats, Reset]


@dataclass
class RunStats:
    hits: int = 0
    misses: int = 0
    evictions: int = 0
    frames_programmed: int = 0
    bytes_decompressed: int = 0
    bytes_transferred: int = 0
    requests: int = 0

    def snapshot(self) -> "RunStats":
        return replace(self)

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass
class FunctionStats:
    hits: int = 0
    misses: int = 0


@dataclass(frozen=True)
class LoadResponse:
    hit: bool
    evicted: tuple[int, ...]


@dataclass(frozen=True)
class ExecuteResponse:
    hit: bool
    evicted: tuple[int, ...]
    output: bytes


class Controller:
    """One microcontroller: parsed ROM, fabric, mini-OS, local RAM, counters."""

    def __init__(self, rom: RomImage, fab: Fabric, bus: BusConfig = BusConfig(),
                 ram_capacity: int = DEFAULT_RAM_CAPACITY):
        self.rom = rom
        self.fabric = fab
        self.bus = bus
        self.os = MiniOs(fab, rom)
        self.ram = LocalRam(capacity=ram_capacity)
        self.stats = RunStats()
        self.per_function: dict[int, FunctionStats] = {}

    def handle(self, command: HostCommand):
        """Process one host command; every command counts as one request."""
        self.stats.requests += 1
        if isinstance(command, LoadFunction):
            outcome = self._load(command.function_id)
            return LoadResponse(hit=outcome.hit, evicted=outcome.evicted)
        if isinstance(command, Execute):
            outcome = self._load(command.function_id)
            record = self.rom.lookup(command.function_id)
            staged = self.stage_input(command.input, record)
            raw = self.fabric.execute_resident(command.function_id, staged)
            output = self.collect_output(raw, record)
            self.stats.bytes_transferred += \
                (record.input_words + record.output_words) * self.bus.bus_width
            return ExecuteResponse(hit=outcome.hit, evicted=outcome.evicted, output=output)
        if isinstance(command, QueryStats):
            return self.stats.snapshot()
        if isinstance(command, Reset):
            self.os.reset()
            self.ram = LocalRam(capacity=self.ram.capacity)
            self.stats = RunStats()
            self.per_function = {}
            return None
        raise TypeError(f"unknown host command {command!r}")

    def _load(self, function_id: int):
        outcome = self.os.ensure_resident(function_id)
        per = self.per_function.setdefault(function_id, FunctionStats())
        if outcome.hit:
            self.stats.hits += 1
            per.hits += 1
        else:
            self.stats.misses += 1
            per.misses += 1
            self.stats.evictions += len(outcome.evicted)
            self.stats.frames_programmed += len(outcome.frames)
            self.stats.bytes_decompressed += outcome.bytes_decompressed
        return outcome

    def stage_input(self, data: bytes, record: FunctionRecord) -> bytes:
        """Zero-pad host input to exactly input_words bus words and store it."""
        limit = record.input_words * self.bus.bus_width
        if len(data) > limit:
            raise InputOverrun(f"input of {len(data)} bytes exceeds "
                               f"{record.input_words} words x {self.bus.bus_width} bytes")
        if limit > self.ram.capacity:
            raise RamOverflow(f"staged input of {limit} bytes exceeds "
                              f"RAM capacity {self.ram.capacity}")
        staged = data + bytes(limit - len(data))
        self.ram.input_buffer = staged
        return staged

    def collect_output(self, raw_output: bytes, record: FunctionRecord) -> bytes:
        """Pad or truncate the behavior result to exactly output_words bus words."""
        size = record.output_words * self.bus.bus_width
        if size > self.ram.capacity:
            raise RamOverflow(f"collected output of {size} bytes exceeds "
                              f"RAM capacity {self.ram.capacity}")
        output = raw_output[:size] + bytes(max(0, size - len(raw_output)))
        self.ram.output_buffer = output
        return output

    def report(self) -> dict:
        """Full statistics report: counters, per-function breakdown, residency."""
        return {
            "counters": self.stats.as_dict(),
            "per_function": {
                str(fid): {"hits": fs.hits, "misses": fs.misses}
                for fid, fs in sorted(self.per_function.items())
            },
            "residency": {
                str(entry.algorithm_id): {
                    "frames": list(entry.frames),
                    "last_access": entry.last_access,
                }
                for entry in sorted(self.os.table.values(), key=lambda e: e.algorithm_id)
            },
        }
