"""Structural feature extraction: 5 protocol-level + 19 statistical
features computed from a module grid, never from pixels and never from
the encoded payload.

The module exposes the canonical feature ordering (``FEATURE_NAMES``)
that doubles as the CSV column contract shared by the dataset, model,
and service layers (with a trailing ``label`` column, 0 = legitimate,
1 = phishing).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import DegenerateGrid, FormatUnrecoverable
from .qr import tables

#: Canonical column order; the first five are protocol-level.
FEATURE_NAMES = (
    "version",
    "ecc_level",
    "masking_pattern",
    "num_alignment_patterns",
    "required_remainder_bits",
    "num_white",
    "num_black",
    "black_white_ratio",
    "density",
    "mean_density",
    "std_density_row",
    "std_density_col",
    "row_transitions_total",
    "col_transitions_total",
    "entropy",
    "vertical_asymmetry",
    "horizontal_asymmetry",
    "tl_density",
    "tr_density",
    "bl_density",
    "br_density",
    "center_density",
    "row_hist_peaks",
    "col_hist_peaks",
)

NUM_PROTOCOL_FEATURES = 5
LABEL_COLUMN = "label"
CSV_COLUMNS = FEATURE_NAMES + (LABEL_COLUMN,)

#: Numeric encoding of ECC levels used in feature vectors.
ECC_CODES = {"L": 0, "M": 1, "Q": 2, "H": 3}


def schema_digest() -> str:
    """Fingerprint of the canonical column contract; stored inside model
    files and checked before prediction."""
    return hashlib.sha256(",".join(CSV_COLUMNS).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class FeatureVector:
    """The 24 named structural features of one QR code."""

    version: int
    ecc_level: int
    masking_pattern: int
    num_alignment_patterns: int
    required_remainder_bits: int
    num_white: int
    num_black: int
    black_white_ratio: float
    density: float
    mean_density: float
    std_density_row: float
    std_density_col: float
    row_transitions_total: int
    col_transitions_total: int
    entropy: float
    vertical_asymmetry: float
    horizontal_asymmetry: float
    tl_density: float
    tr_density: float
    bl_density: float
    br_density: float
    center_density: float
    row_hist_peaks: int
    col_hist_peaks: int

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES],
                        dtype=np.float64)


def _cells(grid) -> np.ndarray:
    cells = np.asarray(getattr(grid, "cells", grid), dtype=np.uint8)
    if cells.ndim != 2 or cells.shape[0] != cells.shape[1]:
        raise ValueError("expected a square cell grid")
    return cells


def _read_bits(cells: np.ndarray,
               coords: tuple[tuple[int, int], ...]) -> int:
    value = 0
    for i, (y, x) in enumerate(coords):
        value |= int(cells[y, x]) << i
    return value


def _decode_format(value: int) -> tuple[str, int] | None:
    """Match a raw 15-bit format value against the 32 valid code words,
    repairing up to 3 corrupted bits."""
    table = tables.format_bit_table()
    if value in table:
        return table[value]
    best = None
    best_dist = 4
    for word, decoded in table.items():
        dist = (value ^ word).bit_count()
        if dist < best_dist:
            best_dist = dist
            best = decoded
    return best


def extract_protocol_features(grid) -> tuple[int, int, int, int, int]:
    """(version, ecc code, mask id, alignment-pattern count, remainder bits).

    The ECC level and mask are recovered from the 15 format modules next
    to the top-left finder, falling back to the redundant second copy.
    """
    cells = _cells(grid)
    side = cells.shape[0]
    version = tables.version_for_side(side)

    copy1, copy2 = tables.format_coords(side)
    decoded = _decode_format(_read_bits(cells, copy1))
    if decoded is None:
        decoded = _decode_format(_read_bits(cells, copy2))
    if decoded is None:
        raise FormatUnrecoverable(
            "format information unreadable in both copies")
    ecc_level, mask_id = decoded
    return (version, ECC_CODES[ecc_level], mask_id,
            tables.num_alignment_patterns(version),
            tables.remainder_bits(version))


def extract_statistical_features(grid) -> tuple:
    """The 19 module-level statistical features, in canonical order."""
    cells = _cells(grid)
    n = cells.shape[0]
    total = n * n
    num_black = int(np.count_nonzero(cells))
    num_white = total - num_black
    if num_black == 0 or num_white == 0:
        raise DegenerateGrid("single-color grid cannot be a QR code")

    # All real-valued features are a single closed-form expression over
    # exact integer counts, so any faithful reimplementation reproduces
    # them bit-for-bit regardless of its summation order.
    density = num_black / total

    # Row/column densities are k_i/n with integer k_i; their mean is
    # num_black/n^2 and their population standard deviation is
    # sqrt(n*sum(k_i^2) - num_black^2) / n^2, both exact in the counts.
    row_sums = cells.sum(axis=1, dtype=np.int64)
    col_sums = cells.sum(axis=0, dtype=np.int64)
    mean_density = num_black / total
    sq_row = int(row_sums @ row_sums)
    sq_col = int(col_sums @ col_sums)
    std_density_row = math.sqrt(n * sq_row - num_black ** 2) / total
    std_density_col = math.sqrt(n * sq_col - num_black ** 2) / total

    row_transitions = int(np.count_nonzero(cells[:, 1:] != cells[:, :-1]))
    col_transitions = int(np.count_nonzero(cells[1:, :] != cells[:-1, :]))

    p = density
    entropy = -p * math.log2(p) - (1 - p) * math.log2(1 - p)

    vertical_asymmetry = \
        int(np.count_nonzero(cells != cells[::-1, :])) / total
    horizontal_asymmetry = \
        int(np.count_nonzero(cells != cells[:, ::-1])) / total

    m = n // 2  # congruent quadrants; odd sides drop the central row/column
    tl = int(np.count_nonzero(cells[:m, :m])) / (m * m)
    tr = int(np.count_nonzero(cells[:m, n - m:])) / (m * m)
    bl = int(np.count_nonzero(cells[n - m:, :m])) / (m * m)
    br = int(np.count_nonzero(cells[n - m:, n - m:])) / (m * m)

    c = math.ceil(n / 3)
    start = (n - c) // 2
    center = int(np.count_nonzero(
        cells[start:start + c, start:start + c])) / (c * c)

    row_hist = row_sums
    col_hist = col_sums

    def peaks(hist: np.ndarray) -> int:
        inner = hist[1:-1]
        return int(np.count_nonzero((inner > hist[:-2]) & (inner > hist[2:])))

    return (num_white, num_black, num_black / num_white, density,
            mean_density, std_density_row, std_density_col,
            row_transitions, col_transitions, entropy,
            vertical_asymmetry, horizontal_asymmetry,
            tl, tr, bl, br, center, peaks(row_hist), peaks(col_hist))


def extract_all(grid) -> FeatureVector:
    """All 24 features as a named, ordered vector."""
    return FeatureVector(*extract_protocol_features(grid),
                         *extract_statistical_features(grid))
