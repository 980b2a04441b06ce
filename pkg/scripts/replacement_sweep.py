#!/usr/bin/env python3
"""Sweep fabric size against a skewed request workload and report hit rates.

Builds one ROM of synthetic functions, then replays the same randomized
request trace against fabrics of increasing frame counts.  Shows how
on-demand loading trades reconfiguration traffic for fabric area: small
fabrics thrash (high eviction rate), large ones converge to pure hits.

    python3 scripts/replacement_sweep.py
    python3 scripts/replacement_sweep.py --functions 12 --events 5000 --seed 3
"""

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from agilesim import behaviors, rom
from agilesim.controller import BusConfig, Controller, Execute, QueryStats
from agilesim.fabric import Fabric, FabricConfig


@dataclass(frozen=True)
class SweepConfig:
    functions: int = 8
    events: int = 2000
    frame_size: int = 32
    max_frames_per_function: int = 6
    fabric_sizes: tuple = (4, 8, 12, 16, 24, 32)
    seed: int = 0


def build_image(cfg: SweepConfig, rng: random.Random):
    funcs = []
    for fid in range(1, cfg.functions + 1):
        behavior = 1 + fid % 3
        frames = rng.randint(1, cfg.max_frames_per_function)
        funcs.append(rom.RomFunction(
            function_id=fid, behavior_id=behavior,
            input_words=rng.randint(1, 4), output_words=rng.randint(1, 4),
            frame_count=frames,
            bitstream=behaviors.synth_bitstream(behavior, frames, cfg.frame_size,
                                                seed=cfg.seed)))
    sizes = {f.function_id: f.frame_count for f in funcs}
    return rom.parse_rom(rom.build_rom(funcs, 1 << 16)), sizes


def skewed_trace(cfg: SweepConfig, rng: random.Random):
    # zipf-flavored popularity: function k drawn with weight 1/k
    ids = list(range(1, cfg.functions + 1))
    weights = [1 / k for k in ids]
    return rng.choices(ids, weights=weights, k=cfg.events)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--functions", type=int, default=SweepConfig.functions)
    parser.add_argument("--events", type=int, default=SweepConfig.events)
    parser.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = parser.parse_args()
    cfg = SweepConfig(functions=args.functions, events=args.events, seed=args.seed)

    rng = random.Random(cfg.seed)
    image, sizes = build_image(cfg, rng)
    trace = skewed_trace(cfg, rng)
    largest = max(sizes.values())

    print(f"{cfg.functions} functions ({sum(sizes.values())} frames total, "
          f"largest {largest}), {cfg.events} requests, seed {cfg.seed}")
    print(f"{'frames':>6}  {'hits':>6}  {'misses':>6}  {'evictions':>9}  "
          f"{'hit rate':>8}  {'bytes decompressed':>18}")
    for total_frames in cfg.fabric_sizes:
        if total_frames < largest:
            print(f"{total_frames:>6}  {'skipped: largest function does not fit':>54}")
            continue
        fab = Fabric(FabricConfig(total_frames=total_frames, frame_size=cfg.frame_size))
        ctrl = Controller(image, fab, BusConfig(bus_width=4))
        for fid in trace:
            ctrl.handle(Execute(fid, b""))
        stats = ctrl.handle(QueryStats())
        print(f"{total_frames:>6}  {stats.hits:>6}  {stats.misses:>6}  "
              f"{stats.evictions:>9}  {stats.hits / cfg.events:>8.3f}  "
              f"{stats.bytes_decompressed:>18}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
