"""Constant tables and pure arithmetic helpers for the QR symbology.

Everything here is a total function of (version, ecc level, mode) and is
shared by the encoder and by the structural feature extractor.  Versions
run from 1 to 40; the module count per side is ``17 + 4 * version``.
"""

from __future__ import annotations

import functools

MIN_VERSION = 1
MAX_VERSION = 40

ECC_LEVELS = ("L", "M", "Q", "H")

# Two-bit field stored in the format information, indexed by ECC level.
ECC_FORMAT_BITS = {"L": 1, "M": 0, "Q": 3, "H": 2}

# Error-correction codewords per block, indexed [ecc][version] (index 0 unused).
ECC_CODEWORDS_PER_BLOCK = {
    "L": (None, 7, 10, 15, 20, 26, 18, 20, 24, 30, 18, 20, 24, 26, 30, 22, 24,
          28, 30, 28, 28, 28, 28, 30, 30, 26, 28, 30, 30, 30, 30, 30, 30, 30,
          30, 30, 30, 30, 30, 30, 30),
    "M": (None, 10, 16, 26, 18, 24, 16, 18, 22, 22, 26, 30, 22, 22, 24, 24, 28,
          28, 26, 26, 26, 26, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28,
          28, 28, 28, 28, 28, 28, 28),
    "Q": (None, 13, 22, 18, 26, 18, 24, 18, 22, 20, 24, 28, 26, 24, 20, 30, 24,
          28, 28, 26, 30, 28, 30, 30, 30, 30, 28, 30, 30, 30, 30, 30, 30, 30,
          30, 30, 30, 30, 30, 30, 30),
    "H": (None, 17, 28, 22, 16, 22, 28, 26, 26, 24, 28, 24, 28, 22, 24, 24, 30,
          28, 28, 26, 28, 30, 24, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30,
          30, 30, 30, 30, 30, 30, 30),
}

# Number of error-correction blocks, indexed [ecc][version] (index 0 unused).
NUM_ERROR_CORRECTION_BLOCKS = {
    "L": (None, 1, 1, 1, 1, 1, 2, 2, 2, 2, 4, 4, 4, 4, 4, 6, 6, 6, 6, 7, 8, 8,
          9, 9, 10, 12, 12, 12, 13, 14, 15, 16, 17, 18, 19, 19, 20, 21, 22, 24,
          25),
    "M": (None, 1, 1, 1, 2, 2, 4, 4, 4, 5, 5, 5, 8, 9, 9, 10, 10, 11, 13, 14,
          16, 17, 17, 18, 20, 21, 23, 25, 26, 28, 29, 31, 33, 35, 37, 38, 40,
          43, 45, 47, 49),
    "Q": (None, 1, 1, 2, 2, 4, 4, 6, 6, 8, 8, 8, 10, 12, 16, 12, 17, 16, 18,
          21, 20, 23, 23, 25, 27, 29, 34, 34, 35, 38, 40, 43, 45, 48, 51, 53,
          56, 59, 62, 65, 68),
    "H": (None, 1, 1, 2, 4, 4, 4, 5, 6, 8, 8, 11, 11, 16, 16, 18, 16, 19, 21,
          25, 25, 25, 34, 30, 32, 35, 37, 40, 42, 45, 48, 51, 54, 57, 60, 63,
          66, 70, 74, 77, 81),
}

# The eight data-mask predicates: a module at (row y, column x) is inverted
# when the predicate evaluates to zero.
MASK_PATTERNS = (
    lambda x, y: (x + y) % 2,
    lambda x, y: y % 2,
    lambda x, y: x % 3,
    lambda x, y: (x + y) % 3,
    lambda x, y: (x // 3 + y // 2) % 2,
    lambda x, y: x * y % 2 + x * y % 3,
    lambda x, y: (x * y % 2 + x * y % 3) % 2,
    lambda x, y: ((x + y) % 2 + x * y % 3) % 2,
)

# Mask-evaluation penalty weights.
PENALTY_N1 = 3
PENALTY_N2 = 3
PENALTY_N3 = 40
PENALTY_N4 = 10

# Characters encodable in alphanumeric mode, in value order.
ALPHANUMERIC_CHARSET = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ $%*+-./:"
ALPHANUMERIC_VALUES = {ch: i for i, ch in enumerate(ALPHANUMERIC_CHARSET)}

MODE_BITS = {"Alphanumeric": 0x2, "Byte": 0x4}


def side_for_version(version: int) -> int:
    return 17 + 4 * version


def version_for_side(side: int) -> int:
    """Inverse of :func:`side_for_version`; raises ValueError off-grid."""
    version, rem = divmod(side - 17, 4)
    if rem != 0 or not MIN_VERSION <= version <= MAX_VERSION:
        raise ValueError(f"side {side} does not correspond to a valid version")
    return version


def char_count_bits(mode: str, version: int) -> int:
    """Bit width of the character-count field for the given mode/version."""
    if mode == "Alphanumeric":
        widths = (9, 11, 13)
    elif mode == "Byte":
        widths = (8, 16, 16)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if 1 <= version <= 9:
        return widths[0]
    if 10 <= version <= 26:
        return widths[1]
    if 27 <= version <= 40:
        return widths[2]
    raise ValueError(f"version {version} out of range")


@functools.lru_cache(maxsize=None)
def alignment_pattern_positions(version: int) -> tuple[int, ...]:
    """Center coordinates (used on both axes) of the alignment patterns."""
    if not MIN_VERSION <= version <= MAX_VERSION:
        raise ValueError(f"version {version} out of range")
    if version == 1:
        return ()
    numalign = version // 7 + 2
    if version != 32:
        step = (version * 4 + numalign * 2 + 1) // (2 * numalign - 2) * 2
    else:
        step = 26  # the one irregular version
    result = [6]
    pos = version * 4 + 10
    for _ in range(numalign - 1):
        result.insert(1, pos)
        pos -= step
    return tuple(result)


def num_alignment_patterns(version: int) -> int:
    """Count of alignment patterns actually drawn (three overlap finders)."""
    k = len(alignment_pattern_positions(version))
    return 0 if k == 0 else k * k - 3


def num_raw_data_modules(version: int) -> int:
    """Modules available for data+ECC bits (includes remainder bits)."""
    if not MIN_VERSION <= version <= MAX_VERSION:
        raise ValueError(f"version {version} out of range")
    result = (16 * version + 128) * version + 64
    if version >= 2:
        numalign = version // 7 + 2
        result -= (25 * numalign - 10) * numalign - 55
        if version >= 7:
            result -= 18 * 2
    return result


def remainder_bits(version: int) -> int:
    """Zero filler modules left over after whole codewords are placed."""
    return num_raw_data_modules(version) % 8


def num_data_codewords(version: int, ecc_level: str) -> int:
    """Data (non-ECC) codewords available at this version and ECC level."""
    return (num_raw_data_modules(version) // 8
            - ECC_CODEWORDS_PER_BLOCK[ecc_level][version]
            * NUM_ERROR_CORRECTION_BLOCKS[ecc_level][version])


@functools.lru_cache(maxsize=None)
def capacity(version: int, ecc_level: str, mode: str) -> int:
    """Maximum character count for a single segment of the given mode."""
    bits = num_data_codewords(version, ecc_level) * 8
    bits -= 4 + char_count_bits(mode, version)  # mode indicator + count field
    if bits < 0:
        return 0
    if mode == "Byte":
        return bits // 8
    if mode == "Alphanumeric":
        pairs, rem = divmod(bits, 11)
        return pairs * 2 + (1 if rem >= 6 else 0)
    raise ValueError(f"unknown mode {mode!r}")


def format_bits(ecc_level: str, mask_id: int) -> int:
    """The 15-bit masked, BCH-protected format information value."""
    data = ECC_FORMAT_BITS[ecc_level] << 3 | mask_id
    rem = data
    for _ in range(10):
        rem = (rem << 1) ^ ((rem >> 9) * 0x537)
    return ((data << 10) | rem) ^ 0x5412


def version_bits(version: int) -> int:
    """The 18-bit BCH-protected version information value (version >= 7)."""
    rem = version
    for _ in range(12):
        rem = (rem << 1) ^ ((rem >> 11) * 0x1F25)
    return version << 12 | rem


def format_coords(side: int) -> tuple[tuple[tuple[int, int], ...],
                                      tuple[tuple[int, int], ...]]:
    """(row, col) positions of format bits 0..14 for both stored copies.

    Copy one wraps around the top-left finder; copy two is split between
    the top-right and bottom-left finders.
    """
    copy1 = ([(i, 8) for i in range(6)] + [(7, 8), (8, 8), (8, 7)]
             + [(8, 14 - i) for i in range(9, 15)])
    copy2 = ([(8, side - 1 - i) for i in range(8)]
             + [(side - 15 + i, 8) for i in range(8, 15)])
    return tuple(copy1), tuple(copy2)


def version_bit_coords(side: int) -> tuple[tuple[tuple[int, int], ...],
                                           tuple[tuple[int, int], ...]]:
    """(row, col) positions of version-information bits 0..17, both copies."""
    upper = []  # block above the bottom-left finder
    lower = []  # block left of the top-right finder
    for i in range(18):
        a, b = side - 11 + i % 3, i // 3
        lower.append((b, a))
        upper.append((a, b))
    return tuple(lower), tuple(upper)


@functools.lru_cache(maxsize=1)
def format_bit_table() -> dict[int, tuple[str, int]]:
    """All 32 valid format values mapped back to (ecc_level, mask_id)."""
    return {
        format_bits(ecc, mask): (ecc, mask)
        for ecc in ECC_LEVELS
        for mask in range(8)
    }
