"""Exception hierarchy for the co-processor simulator.

Everything raised on a simulated failure path derives from SimError so
callers (and the CLI) can separate simulator outcomes from plain bugs.
"""


class SimError(Exception):
    """Base class for all simulator errors."""


# --- codec ---------------------------------------------------------------

class CodecError(SimError):
    """Base class for bitstream codec errors."""


class EmptyWindow(CodecError):
    """A window (or whole bitstream) of zero bytes was offered for compression."""


class MalformedPairs(CodecError):
    """Compressed payload is not a whole number of (count, value) pairs, or a count is zero."""


class LengthMismatch(CodecError):
    """Decompressed window length differs from the declared length."""


# --- ROM image -----------------------------------------------------------

class RomError(SimError):
    """Base class for ROM image build/parse errors."""


class RomOverflow(RomError):
    """Bitstream region and record table would overlap at the requested ROM size."""


class DuplicateFunctionId(RomError):
    """Two functions share a function_id within one ROM image."""


class BadMagic(RomError):
    """Image does not start with the AROM magic."""


class UnsupportedVersion(RomError):
    """Image declares a format version this parser does not speak."""


class TruncatedImage(RomError):
    """Image is shorter than its header or declared rom_size."""


class OverlappingRegions(RomError):
    """A record points outside the bitstream region or into the record table."""


class MalformedRecord(RomError):
    """A record table entry violates its field invariants."""


class UnknownFunction(RomError):
    """function_id not present in the record table."""


class TruncatedContainer(RomError):
    """Bitstream container slice ends before its declared contents."""


class ContainerSizeMismatch(RomError):
    """Bitstream container bookkeeping disagrees with the record's compressed_size."""


# --- fabric --------------------------------------------------------------

class FabricError(SimError):
    """Base class for fabric (FPGA model) errors."""


class FrameBusy(FabricError):
    """A frame selected for programming is already occupied."""


class ConfigSizeMismatch(FabricError):
    """Configuration byte count does not match frame_count x frame_size."""


class NotResident(FabricError):
    """Operation addressed an algorithm that is not on the fabric."""


# --- mini-OS -------------------------------------------------------------

class MiniOsError(SimError):
    """Base class for mini-OS errors."""


class NoResidents(MiniOsError):
    """Victim selection on an empty replacement table."""


class TooLarge(MiniOsError):
    """Function needs more frames than the fabric has in total."""


# --- controller ----------------------------------------------------------

class ControllerError(SimError):
    """Base class for host-interface errors."""


class InputOverrun(ControllerError):
    """Host input exceeds input_words x bus_width for the target function."""


class RamOverflow(ControllerError):
    """A staged buffer would exceed local RAM capacity."""


# --- behaviors -----------------------------------------------------------

class UnknownBehavior(SimError):
    """behavior_id is not in the registry."""


# --- CLI -----------------------------------------------------------------

class TraceFormatError(SimError):
    """A trace file line is not a valid event object."""
