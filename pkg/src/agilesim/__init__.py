"""Functional simulator of an algorithm-agile, on-demand co-processor.

Three cooperating blocks: a ROM holding compressed configuration
bitstreams plus a function record table, a microcontroller whose
mini-OS loads and evicts functions by least-recent use, and a partially
reconfigurable frame-based fabric that keeps untouched frames running.
"""

from . import behaviors, codec, controller, fabric, minios, rom
from .codec import CompressedStream, compress_stream, compress_window, decompress_stream, decompress_window
from .controller import BusConfig, Controller, Execute, LoadFunction, QueryStats, Reset, RunStats
from .fabric import Fabric, FabricConfig
from .minios import LoadOutcome, MiniOs
from .rom import FunctionRecord, RomFunction, RomImage, build_rom, parse_rom

__version__ = "0.1.0"

__all__ = [
    "BusConfig",
    "CompressedStream",
    "Controller",
    "Execute",
    "Fabric",
    "FabricConfig",
    "FunctionRecord",
    "LoadFunction",
    "LoadOutcome",
    "MiniOs",
    "QueryStats",
    "Reset",
    "RomFunction",
    "RomImage",
    "RunStats",
    "behaviors",
    "build_rom",
    "codec",
    "compress_stream",
    "compress_window",
    "controller",
    "decompress_stream",
    "decompress_window",
    "fabric",
    "minios",
    "parse_rom",
    "rom",
]
