"""Mini-OS of the configuration microcontroller.

Keeps the Free Frame List and the frame replacement table: one entry
per resident algorithm with its frame set and the logical timestamp of
its last access.  On a request for a function that is not resident, the
oldest-timestamp resident is evicted (whole, all frames) repeatedly
until the allocation fits, then the bitstream is fetched from ROM,
decompressed window by window and programmed onto the fabric.

Timestamps come from a logical clock that increments once per request,
so they are unique and the trace is reproducible.  The victim policy is
a plain callable over the table; the default picks the least recently
used entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from . import behaviors, codec
from .errors import ConfigSizeMismatch, NoResidents, NotResident, SimError, TooLarge
from .fabric import Fabric
from .rom import RomImage


@dataclass
class ReplacementEntry:
    algorithm_id: int
    frames: list[int]
    last_access: int


@dataclass(frozen=True)
class Insufficient:
    """Normal allocate() outcome when the free list is too short."""

    shortfall: int


@dataclass(frozen=True)
class LoadOutcome:
    """Result of ensure_resident: a Hit, or a Load with its eviction trail."""

    hit: bool
    evicted: tuple[int, ...] = ()
    frames: tuple[int, ...] = ()
    bytes_decompressed: int = 0

    @property
    def loaded(self) -> bool:
        return not self.hit


def select_victim(table: Mapping[int, ReplacementEntry]) -> int:
    """Oldest-timestamp entry wins; ties (foreign policies only) break on lowest id."""
    if not table:
        raise NoResidents("replacement table is empty")
    entry = min(table.values(), key=lambda e: (e.last_access, e.algorithm_id))
    return entry.algorithm_id


def allocate(free: list[int], needed: int) -> list[int] | Insufficient:
    """Take the `needed` lowest-indexed frames off the free list.

    The result may be non-contiguous.  Returns Insufficient (not an
    error) when the list is too short; the free list is then untouched.
    """
    if needed < 1:
        raise ValueError(f"needed must be >= 1, got {needed}")
    if len(free) < needed:
        return Insufficient(needed - len(free))
    taken = free[:needed]
    del free[:needed]
    return taken


class MiniOs:
    """Load/evict orchestrator bound to one fabric and one parsed ROM."""

    def __init__(self, fab: Fabric, rom: RomImage,
                 victim_policy: Callable[[Mapping[int, ReplacementEntry]], int] = select_victim):
        self.fabric = fab
        self.rom = rom
        self.table: dict[int, ReplacementEntry] = {}
        self.free: list[int] = list(range(fab.config.total_frames))
        self.clock = 0
        self._victim_policy = victim_policy

    def touch(self, algorithm_id: int) -> None:
        """Stamp an entry with a fresh clock value."""
        entry = self.table.get(algorithm_id)
        if entry is None:
            raise NotResident(f"algorithm {algorithm_id} has no replacement entry")
        self.clock += 1
        entry.last_access = self.clock

    def select_victim(self) -> int:
        return self._victim_policy(self.table)

    def evict(self, algorithm_id: int) -> list[int]:
        """Erase one resident algorithm and return its frames to the free list."""
        if algorithm_id not in self.table:
            raise NotResident(f"algorithm {algorithm_id} is not resident")
        freed = self.fabric.clear_frames(algorithm_id)
        del self.table[algorithm_id]
        self.free = sorted(self.free + freed)
        return freed

    def ensure_resident(self, function_id: int) -> LoadOutcome:
        """Make function_id resident, evicting oldest-first as needed.

        A hit only refreshes the timestamp.  On any failure mid-load the
        fabric, table and free list are restored to their pre-call state
        (the clock is never rolled back, keeping timestamps unique).
        """
        record = self.rom.lookup(function_id)
        if record.frame_count > self.fabric.config.total_frames:
            raise TooLarge(f"function {function_id} needs {record.frame_count} frames, "
                           f"fabric has {self.fabric.config.total_frames}")
        if function_id in self.table:
            self.touch(function_id)
            return LoadOutcome(hit=True, frames=tuple(self.table[function_id].frames))

        saved = (self.fabric.snapshot(),
                 {a: ReplacementEntry(e.algorithm_id, list(e.frames), e.last_access)
                  for a, e in self.table.items()},
                 list(self.free))
        try:
            evicted = []
            while len(self.free) < record.frame_count:
                victim = self.select_victim()
                self.evict(victim)
                evicted.append(victim)
            stream = self.rom.fetch_bitstream(record)
            behaviors.require(stream.behavior_id)
            expected = record.frame_count * self.fabric.config.frame_size
            if stream.total_uncompressed != expected:
                raise ConfigSizeMismatch(
                    f"function {function_id}: bitstream decompresses to "
                    f"{stream.total_uncompressed} bytes, fabric geometry needs {expected}")
            frames = allocate(self.free, record.frame_count)
            assert not isinstance(frames, Insufficient)
            self.fabric.program_frames(function_id, frames,
                                       codec.decompress_stream(stream),
                                       stream.behavior_id)
            self.clock += 1
            self.table[function_id] = ReplacementEntry(function_id, list(frames), self.clock)
            return LoadOutcome(hit=False, evicted=tuple(evicted), frames=tuple(frames),
                               bytes_decompressed=stream.total_uncompressed)
        except SimError:
            self.fabric.restore(saved[0])
            self.table = saved[1]
            self.free = saved[2]
            raise

    def reset(self) -> None:
        """Evict everything; the clock keeps running."""
        for algorithm_id in list(self.table):
            self.evict(algorithm_id)
