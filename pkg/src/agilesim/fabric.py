"""Frame-granular model of a partially reconfigurable logic fabric.

The fabric is an array of uniform frames, each free or owned by exactly
one resident algorithm together with its slice of configuration bytes.
Programming or clearing a set of frames never disturbs any other frame:
the rest of the fabric stays bit-identical and executable.  Frame
contents are stored but semantically inert; what a resident algorithm
computes is defined by its behavior id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import behaviors
from .errors import ConfigSizeMismatch, FrameBusy, NotResident

# snapshot: (frames tuple, {algorithm_id: (behavior_id, frames tuple)})
Snapshot = tuple[tuple, dict]


@dataclass(frozen=True)
class FabricConfig:
    total_frames: int
    frame_size: int

    def __post_init__(self):
        if self.total_frames < 1 or self.frame_size < 1:
            raise ValueError("total_frames and frame_size must be >= 1")


@dataclass(frozen=True)
class OccupiedFrame:
    owner: int
    data: bytes


class Fabric:
    """Array of frames plus the map of resident algorithms."""

    def __init__(self, config: FabricConfig):
        self.config = config
        self._frames: list[OccupiedFrame | None] = [None] * config.total_frames
        self._residents: dict[int, tuple[int, list[int]]] = {}

    @property
    def frames(self) -> tuple[OccupiedFrame | None, ...]:
        return tuple(self._frames)

    def resident_algorithms(self) -> dict[int, tuple[int, list[int]]]:
        """algorithm_id -> (behavior_id, frame index list), as copies."""
        return {a: (b, list(f)) for a, (b, f) in self._residents.items()}

    def is_resident(self, algorithm_id: int) -> bool:
        return algorithm_id in self._residents

    def program_frames(self, algorithm_id: int, frames: Sequence[int],
                       config_stream: Iterable[bytes], behavior_id: int) -> None:
        """Program the listed free frames from a window stream.

        The stream must yield exactly len(frames) * frame_size bytes in
        total; windows are re-chunked to frame boundaries internally.
        No frame is modified until the whole stream has been consumed
        and validated, so a failing stream leaves the fabric untouched.
        """
        if algorithm_id in self._residents:
            raise ValueError(f"algorithm {algorithm_id} is already resident")
        if len(set(frames)) != len(frames):
            raise ValueError("frame list contains duplicates")
        for idx in frames:
            if not 0 <= idx < self.config.total_frames:
                raise ValueError(f"frame index {idx} out of range")
            if self._frames[idx] is not None:
                raise FrameBusy(f"frame {idx} is occupied by "
                                f"algorithm {self._frames[idx].owner}")

        frame_size = self.config.frame_size
        needed = len(frames) * frame_size
        buf = bytearray()
        for window in config_stream:
            buf += window
            if len(buf) > needed:
                raise ConfigSizeMismatch(
                    f"stream exceeds {needed} bytes for {len(frames)} frames")
        if len(buf) != needed:
            raise ConfigSizeMismatch(
                f"stream yielded {len(buf)} bytes, need {needed} "
                f"for {len(frames)} frames of {frame_size}")

        for j, idx in enumerate(frames):
            self._frames[idx] = OccupiedFrame(
                algorithm_id, bytes(buf[j * frame_size:(j + 1) * frame_size]))
        self._residents[algorithm_id] = (behavior_id, list(frames))

    def clear_frames(self, algorithm_id: int) -> list[int]:
        """Erase exactly one resident algorithm's frames; return the freed indices."""
        if algorithm_id not in self._residents:
            raise NotResident(f"algorithm {algorithm_id} is not resident")
        _, frames = self._residents.pop(algorithm_id)
        for idx in frames:
            self._frames[idx] = None
        return list(frames)

    def execute_resident(self, algorithm_id: int, input_data: bytes) -> bytes:
        """Run a resident algorithm's behavior; mutates nothing."""
        if algorithm_id not in self._residents:
            raise NotResident(f"algorithm {algorithm_id} is not resident")
        behavior_id, _ = self._residents[algorithm_id]
        return behaviors.run(behavior_id, input_data)

    def occupancy(self) -> tuple[list[int], dict[int, list[int]]]:
        """Partition frame indices into (free list, algorithm -> frames map)."""
        free = [i for i, f in enumerate(self._frames) if f is None]
        return free, {a: list(f) for a, (_, f) in self._residents.items()}

    def snapshot(self) -> Snapshot:
        """Cheap immutable copy of the full fabric state."""
        return (tuple(self._frames),
                {a: (b, tuple(f)) for a, (b, f) in self._residents.items()})

    def restore(self, snap: Snapshot) -> None:
        frames, residents = snap
        self._frames = list(frames)
        self._residents = {a: (b, list(f)) for a, (b, f) in residents.items()}
