#!/usr/bin/env python3
"""Measure run-length compression across bitstream sparsity and window size.

Configuration bitstreams are mostly zero bytes; this sweep quantifies how
the compressed ROM footprint (containers included) grows as the nonzero
fraction rises, and what the per-window framing overhead costs at small
window sizes.

    python3 scripts/compression_sweep.py
    python3 scripts/compression_sweep.py --frames 64 --frame-size 128
"""

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from agilesim import codec, rom


@dataclass(frozen=True)
class SweepConfig:
    frames: int = 32
    frame_size: int = 64
    densities: tuple = (0.0, 0.02, 0.05, 0.1, 0.3, 0.5, 1.0)
    window_sizes: tuple = (16, 64, 256, 4096)
    seed: int = 0


def synth(density: float, total: int, rng: random.Random) -> bytes:
    return bytes(rng.randrange(1, 256) if rng.random() < density else 0
                 for _ in range(total))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--frames", type=int, default=SweepConfig.frames)
    parser.add_argument("--frame-size", type=int, default=SweepConfig.frame_size)
    parser.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = parser.parse_args()
    cfg = SweepConfig(frames=args.frames, frame_size=args.frame_size, seed=args.seed)

    total = cfg.frames * cfg.frame_size
    print(f"bitstream: {cfg.frames} frames x {cfg.frame_size} bytes = {total} bytes")
    header = "density  " + "  ".join(f"ws={w:<5}" for w in cfg.window_sizes)
    print(header)
    print("-" * len(header))
    for density in cfg.densities:
        rng = random.Random((cfg.seed, density).__repr__())
        raw = synth(density, total, rng)
        cells = []
        for window_size in cfg.window_sizes:
            stream = codec.compress_stream(raw, window_size=window_size)
            packed = len(rom.encode_container(stream))
            cells.append(f"{packed / total:>7.3f}")
        print(f"{density:>7.2f}  " + "  ".join(cells))
    print("(cells are container bytes / raw bytes; < 1.0 means the ROM saves space)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
