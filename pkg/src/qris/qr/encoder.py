"""Standards-conformant QR module-matrix synthesis.

Produces bit-exact symbols for Alphanumeric and Byte payloads across all
40 versions, four ECC levels, and eight data masks.  Per-version layout
(function-module positions, data placement order, mask overlays) is
computed once and cached, so repeated encoding is dominated by the
Reed-Solomon and mask-penalty kernels.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import EmptyPayload, PayloadTooLong, UnsupportedMode
from . import galois, tables

MODES = ("Alphanumeric", "Byte")


@dataclass(frozen=True)
class EncodingParams:
    """The exact parameters a symbol was generated with."""

    version: int
    ecc_level: str
    mask_id: int
    mode: str

    def __post_init__(self) -> None:
        if not tables.MIN_VERSION <= self.version <= tables.MAX_VERSION:
            raise ValueError(f"version {self.version} out of range")
        if self.ecc_level not in tables.ECC_LEVELS:
            raise ValueError(f"unknown ECC level {self.ecc_level!r}")
        if not 0 <= self.mask_id <= 7:
            raise ValueError(f"mask {self.mask_id} out of range")
        if self.mode not in MODES:
            raise UnsupportedMode(f"mode {self.mode!r} is not supported")


@dataclass(frozen=True)
class QrMatrix:
    """An n-by-n module grid (1 = black) plus its generating parameters."""

    side: int
    grid: np.ndarray
    params: EncodingParams

    def to_text(self) -> str:
        """Human-readable dump, one glyph per module, for golden files."""
        return "\n".join(
            "".join("█" if cell else "·" for cell in row)
            for row in self.grid)


class _Layout:
    """Per-version geometry shared by every symbol of that version."""

    __slots__ = ("side", "base", "is_function", "order_rows", "order_cols",
                 "mask_overlays", "format_coords")

    def __init__(self, version: int) -> None:
        side = tables.side_for_version(version)
        base = np.zeros((side, side), dtype=np.uint8)
        func = np.zeros((side, side), dtype=bool)
        self.side = side

        # Timing patterns
        idx = np.arange(side)
        base[6, :] = (idx % 2 == 0)
        base[:, 6] = (idx % 2 == 0)
        func[6, :] = True
        func[:, 6] = True

        # Finder patterns with separators (9x9 around each center)
        for cy, cx in ((3, 3), (3, side - 4), (side - 4, 3)):
            for dy in range(-4, 5):
                for dx in range(-4, 5):
                    y, x = cy + dy, cx + dx
                    if 0 <= y < side and 0 <= x < side:
                        base[y, x] = max(abs(dy), abs(dx)) not in (2, 4)
                        func[y, x] = True

        # Alignment patterns (skip the three finder corners)
        positions = tables.alignment_pattern_positions(version)
        n = len(positions)
        skips = {(0, 0), (0, n - 1), (n - 1, 0)}
        for i in range(n):
            for j in range(n):
                if (i, j) in skips:
                    continue
                cy, cx = positions[i], positions[j]
                for dy in range(-2, 3):
                    for dx in range(-2, 3):
                        base[cy + dy, cx + dx] = max(abs(dy), abs(dx)) != 1
                        func[cy + dy, cx + dx] = True

        # Format information areas (values filled per symbol) + dark module
        copy1, copy2 = tables.format_coords(side)
        self.format_coords = copy1 + copy2
        for y, x in self.format_coords:
            func[y, x] = True
        base[side - 8, 8] = 1
        func[side - 8, 8] = True

        # Version information (fixed per version)
        if version >= 7:
            bits = tables.version_bits(version)
            for coords in tables.version_bit_coords(side):
                for i, (y, x) in enumerate(coords):
                    base[y, x] = (bits >> i) & 1
                    func[y, x] = True

        self.base = base
        self.is_function = func

        # Zigzag placement order over non-function modules
        rows, cols = [], []
        for right in range(side - 1, 0, -2):
            if right <= 6:
                right -= 1
            upward = (right + 1) & 2 == 0
            for vert in range(side):
                y = (side - 1 - vert) if upward else vert
                for x in (right, right - 1):
                    if not func[y, x]:
                        rows.append(y)
                        cols.append(x)
        self.order_rows = np.array(rows, dtype=np.intp)
        self.order_cols = np.array(cols, dtype=np.intp)

        # Mask overlays restricted to data modules
        ys, xs = np.mgrid[0:side, 0:side]
        overlays = np.empty((8, side, side), dtype=np.uint8)
        for m, pattern in enumerate(tables.MASK_PATTERNS):
            overlays[m] = (pattern(xs, ys) == 0) & ~func
        self.mask_overlays = overlays


@functools.lru_cache(maxsize=None)
def _layout(version: int) -> _Layout:
    return _Layout(version)


def select_mode(payload: str) -> str:
    """Alphanumeric when every character is in the 45-character set."""
    if all(ch in tables.ALPHANUMERIC_VALUES for ch in payload):
        return "Alphanumeric"
    return "Byte"


def _payload_length(payload: str, mode: str) -> int:
    return len(payload) if mode == "Alphanumeric" else len(payload.encode("utf-8"))


def _data_bits(payload: str, mode: str, version: int) -> list[int]:
    """Mode indicator, character count, and payload bits (MSB first)."""
    bits: list[int] = []

    def append(val: int, n: int) -> None:
        bits.extend((val >> i) & 1 for i in range(n - 1, -1, -1))

    count = _payload_length(payload, mode)
    append(tables.MODE_BITS[mode], 4)
    append(count, tables.char_count_bits(mode, version))
    if mode == "Alphanumeric":
        vals = [tables.ALPHANUMERIC_VALUES[ch] for ch in payload]
        for i in range(0, len(vals) - 1, 2):
            append(vals[i] * 45 + vals[i + 1], 11)
        if len(vals) % 2:
            append(vals[-1], 6)
    else:
        for b in payload.encode("utf-8"):
            append(b, 8)
    return bits


def _data_codewords(payload: str, mode: str, version: int,
                    ecc_level: str) -> np.ndarray:
    """Segment bits, terminator, byte alignment, and alternating pad bytes."""
    bits = _data_bits(payload, mode, version)
    num_codewords = tables.num_data_codewords(version, ecc_level)
    bits.extend([0] * min(4, num_codewords * 8 - len(bits)))  # terminator
    bits.extend([0] * (-len(bits) % 8))
    codewords = np.packbits(np.array(bits, dtype=np.uint8))
    num_pad = num_codewords - codewords.size
    pad = np.resize(np.array([0xEC, 0x11], dtype=np.uint8), num_pad)
    return np.concatenate([codewords, pad])


def _interleave_with_ecc(data: np.ndarray, version: int,
                         ecc_level: str) -> np.ndarray:
    """Split into RS blocks, append ECC, and interleave block bytes."""
    num_blocks = tables.NUM_ERROR_CORRECTION_BLOCKS[ecc_level][version]
    block_ecc_len = tables.ECC_CODEWORDS_PER_BLOCK[ecc_level][version]
    raw_codewords = tables.num_raw_data_modules(version) // 8
    num_short = num_blocks - raw_codewords % num_blocks
    short_len = raw_codewords // num_blocks  # includes ECC

    prod = galois._factor_products(block_ecc_len)
    # Rows: one block per row, short blocks padded with a placeholder byte
    # so every row has short_len + 1 columns; the placeholder column is
    # masked out before the column-major (interleaved) readout.
    table = np.zeros((num_blocks, short_len + 1), dtype=np.uint8)
    keep = np.ones_like(table, dtype=bool)
    pad_col = short_len - block_ecc_len
    k = 0
    for i in range(num_blocks):
        datlen = pad_col + (0 if i < num_short else 1)
        table[i, :datlen] = data[k:k + datlen]
        table[i, short_len + 1 - block_ecc_len:] = _kernels.rs_remainder(
            np.ascontiguousarray(data[k:k + datlen]), prod)
        if i < num_short:
            keep[i, pad_col] = False
        k += datlen
    result = table.T[keep.T]
    assert result.shape[0] == raw_codewords
    return result


def _assemble(version: int, ecc_level: str, codewords: np.ndarray,
              mask_id: int | None) -> tuple[np.ndarray, int]:
    """Place codewords and choose/apply the data mask; returns (grid, mask)."""
    layout = _layout(version)
    grid = layout.base.copy()
    bits = np.unpackbits(codewords)
    grid[layout.order_rows[:bits.size], layout.order_cols[:bits.size]] = bits

    fmt_rows = np.array([y for y, _ in layout.format_coords], dtype=np.intp)
    fmt_cols = np.array([x for _, x in layout.format_coords], dtype=np.intp)

    def with_mask(m: int) -> np.ndarray:
        candidate = grid ^ layout.mask_overlays[m]
        value = tables.format_bits(ecc_level, m)
        fmt = [(value >> i) & 1 for i in range(15)]
        candidate[fmt_rows, fmt_cols] = fmt + fmt
        return candidate

    if mask_id is not None:
        return with_mask(mask_id), mask_id
    best_mask = 0
    best_penalty = None
    best_grid = None
    for m in range(8):
        candidate = with_mask(m)
        penalty = _kernels.penalty_score(np.ascontiguousarray(candidate))
        if best_penalty is None or penalty < best_penalty:
            best_mask, best_penalty, best_grid = m, penalty, candidate
    return best_grid, best_mask


def encode(payload: str, ecc_choice: str | None = None, rng_seed: int = 0,
           *, force_version: int | None = None,
           force_mask: int | None = None) -> QrMatrix:
    """Encode text into a QR module matrix.

    Mode is Alphanumeric when the payload allows it, else Byte (UTF-8).
    The version is the smallest that fits the payload at ECC level L.
    When ``ecc_choice`` is omitted, the ECC level is drawn uniformly
    (seeded by ``rng_seed``) from the levels still feasible at that
    version.  ``force_version``/``force_mask`` pin the respective
    parameters instead of deriving them; ``force_mask=None`` selects the
    penalty-minimizing mask (ties going to the lowest id).
    """
    if not payload:
        raise EmptyPayload("payload must be non-empty")
    if ecc_choice is not None and ecc_choice not in tables.ECC_LEVELS:
        raise ValueError(f"unknown ECC level {ecc_choice!r}")
    mode = select_mode(payload)
    length = _payload_length(payload, mode)

    if force_version is not None:
        version = force_version
    else:
        reference_ecc = ecc_choice if ecc_choice is not None else "L"
        version = next(
            (v for v in range(tables.MIN_VERSION, tables.MAX_VERSION + 1)
             if tables.capacity(v, reference_ecc, mode) >= length), None)
        if version is None:
            raise PayloadTooLong(
                f"{length} {mode} characters exceed version-40 capacity")

    if ecc_choice is not None:
        ecc_level = ecc_choice
    else:
        feasible = [e for e in tables.ECC_LEVELS
                    if tables.capacity(version, e, mode) >= length]
        if not feasible:
            raise PayloadTooLong(
                f"payload does not fit version {version} at any ECC level")
        ecc_level = random.Random(rng_seed).choice(feasible)
    if tables.capacity(version, ecc_level, mode) < length:
        raise PayloadTooLong(
            f"payload does not fit version {version} at ECC {ecc_level}")

    data = _data_codewords(payload, mode, version, ecc_level)
    codewords = _interleave_with_ecc(data, version, ecc_level)
    grid, mask_id = _assemble(version, ecc_level, codewords, force_mask)
    params = EncodingParams(version, ecc_level, mask_id, mode)
    grid.flags.writeable = False
    return QrMatrix(side=layout_side(version), grid=grid, params=params)


def layout_side(version: int) -> int:
    return tables.side_for_version(version)


def capacity(version: int, ecc_level: str, mode: str) -> int:
    """Maximum character count for the given parameters (see tables)."""
    if mode not in MODES:
        raise UnsupportedMode(f"mode {mode!r} is not supported")
    return tables.capacity(version, ecc_level, mode)
