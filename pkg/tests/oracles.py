"""Independent reference implementations the tests check the simulator against.

Kept deliberately separate from the package: a trivial pair expander for
the run-length codec, zlib's CRC-32, and a brute-force loader that
rescans every resident's timestamp at each step.
"""

import zlib


def expand_pairs(pairs: bytes) -> bytes:
    """Expand (count, value) pairs the obvious way; no validation shortcuts."""
    assert len(pairs) % 2 == 0
    out = b""
    for i in range(0, len(pairs), 2):
        count, value = pairs[i], pairs[i + 1]
        assert count >= 1
        out += bytes([value]) * count
    return out


def crc32_le(data: bytes) -> bytes:
    return zlib.crc32(data).to_bytes(4, "little")


def xor_fold(data: bytes) -> bytes:
    acc = 0
    for b in data:
        acc = acc ^ b
    return bytes([acc])


def add_one_wrapping(data: bytes) -> bytes:
    return bytes([(b + 1) % 256 for b in data])


class ReferenceLoader:
    """Brute-force load/evict reference.

    Tracks only (frame_count, last_access) per resident and a free-frame
    count; the victim is found by scanning all residents for the oldest
    timestamp at every request, ties broken by lowest id.
    """

    def __init__(self, total_frames: int):
        self.total_frames = total_frames
        self.free = total_frames
        self.residents = {}  # function_id -> [frame_count, last_access]
        self.clock = 0

    def request(self, function_id: int, frame_count: int):
        """Returns ("hit" | "loaded", evicted id list)."""
        assert frame_count <= self.total_frames
        self.clock += 1
        if function_id in self.residents:
            self.residents[function_id][1] = self.clock
            return "hit", []
        evicted = []
        while self.free < frame_count:
            victim = None
            oldest = None
            for fid, (_, stamp) in self.residents.items():
                if oldest is None or (stamp, fid) < oldest:
                    oldest = (stamp, fid)
                    victim = fid
            self.free += self.residents.pop(victim)[0]
            evicted.append(victim)
        self.free -= frame_count
        self.residents[function_id] = [frame_count, self.clock]
        return "loaded", evicted
