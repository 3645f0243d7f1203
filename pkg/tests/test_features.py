"""Feature-extraction tests, including an independent naive oracle
written with plain Python loops (no shared helper code with the package
implementation beyond the format-word table)."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qris.errors import DegenerateGrid, FormatUnrecoverable
from qris.features import (CSV_COLUMNS, ECC_CODES, FEATURE_NAMES,
                           FeatureVector, extract_all,
                           extract_protocol_features,
                           extract_statistical_features, schema_digest)
from qris.qr import encode, tables


# ------------------------------------------------------------ naive oracle

def naive_statistical_features(cells) -> tuple:
    """Loop-based reimplementation of the 19 statistical features."""
    cells = [[int(v) for v in row] for row in np.asarray(cells)]
    n = len(cells)
    total = n * n
    num_black = 0
    for row in cells:
        for v in row:
            num_black += v
    num_white = total - num_black

    row_sums = [sum(row) for row in cells]
    col_sums = [sum(cells[i][j] for i in range(n)) for j in range(n)]
    sq_row = sum(k * k for k in row_sums)
    sq_col = sum(k * k for k in col_sums)

    row_transitions = 0
    col_transitions = 0
    for i in range(n):
        for j in range(n - 1):
            if cells[i][j] != cells[i][j + 1]:
                row_transitions += 1
            if cells[j][i] != cells[j + 1][i]:
                col_transitions += 1

    p = num_black / total
    entropy = -p * math.log2(p) - (1 - p) * math.log2(1 - p)

    vert = sum(cells[i][j] != cells[n - 1 - i][j]
               for i in range(n) for j in range(n))
    horiz = sum(cells[i][j] != cells[i][n - 1 - j]
                for i in range(n) for j in range(n))

    m = n // 2

    def block(r0, c0):
        return sum(cells[r0 + i][c0 + j]
                   for i in range(m) for j in range(m))

    c = math.ceil(n / 3)
    start = (n - c) // 2
    center = sum(cells[start + i][start + j]
                 for i in range(c) for j in range(c))

    def peaks(hist):
        return sum(1 for i in range(1, n - 1)
                   if hist[i] > hist[i - 1] and hist[i] > hist[i + 1])

    return (num_white, num_black, num_black / num_white, p,
            num_black / total,
            math.sqrt(n * sq_row - num_black ** 2) / total,
            math.sqrt(n * sq_col - num_black ** 2) / total,
            row_transitions, col_transitions, entropy,
            vert / total, horiz / total,
            block(0, 0) / (m * m), block(0, n - m) / (m * m),
            block(n - m, 0) / (m * m), block(n - m, n - m) / (m * m),
            center / (c * c), peaks(row_sums), peaks(col_sums))


def random_grid(rng: np.random.Generator, side: int) -> np.ndarray:
    while True:
        cells = (rng.random((side, side)) < rng.uniform(0.2, 0.8))
        cells = cells.astype(np.uint8)
        if 0 < cells.sum() < side * side:
            return cells


# ---------------------------------------------------------------- schema

def test_schema():
    assert len(FEATURE_NAMES) == 24
    assert CSV_COLUMNS[-1] == "label"
    assert len(schema_digest()) == 16
    assert ECC_CODES == {"L": 0, "M": 1, "Q": 2, "H": 3}


def test_vector_round_trips_dict_and_array():
    m = encode("HELLO WORLD", ecc_choice="Q", force_version=1)
    v = extract_all(m.grid)
    assert list(v.as_dict()) == list(FEATURE_NAMES)
    assert np.array_equal(v.as_array(),
                          [v.as_dict()[k] for k in FEATURE_NAMES])


# --------------------------------------------------------------- protocol

def test_protocol_features_recover_encoding_params():
    rng = random.Random(1)
    for _ in range(60):
        version = rng.randint(1, 40)
        ecc = rng.choice("LMQH")
        mask = rng.randint(0, 7)
        m = encode("A0B1", ecc_choice=ecc, force_version=version,
                   force_mask=mask)
        got = extract_protocol_features(m.grid)
        assert got == (version, ECC_CODES[ecc], mask,
                       tables.num_alignment_patterns(version),
                       tables.remainder_bits(version))


def test_format_repair_up_to_three_bits():
    rng = random.Random(2)
    m = encode("REPAIR", ecc_choice="M", force_version=1, force_mask=5)
    copy1, copy2 = tables.format_coords(21)
    for n_flips in (1, 2, 3):
        for _ in range(20):
            g = m.grid.copy()
            for coords in (copy1, copy2):
                for (r, c) in rng.sample(coords, n_flips):
                    g[r, c] ^= 1
            assert extract_protocol_features(g)[1:3] == (ECC_CODES["M"], 5)


def test_format_unrecoverable_when_both_copies_destroyed():
    # the all-zero format word has Hamming distance >= 4 from every
    # valid word, so neither copy can be repaired
    m = encode("HELLO WORLD", ecc_choice="Q", force_version=1)
    g = m.grid.copy()
    for coords in tables.format_coords(21):
        for (r, c) in coords:
            g[r, c] = 0
    with pytest.raises(FormatUnrecoverable):
        extract_protocol_features(g)


def test_second_copy_rescues_first():
    m = encode("HELLO WORLD", ecc_choice="Q", force_version=1)
    g = m.grid.copy()
    copy1, _ = tables.format_coords(21)
    for (r, c) in copy1:
        g[r, c] = 0
    assert extract_protocol_features(g)[1:3] == \
        extract_protocol_features(m.grid)[1:3]


# ------------------------------------------------------------ statistical

def test_statistical_oracle_agreement_sample():
    rng = np.random.default_rng(0)
    for _ in range(100):
        side = int(rng.integers(8, 60))
        cells = random_grid(rng, side)
        assert extract_statistical_features(cells) == \
            naive_statistical_features(cells)


def test_black_white_partition_25x25():
    rng = np.random.default_rng(3)
    for _ in range(20):
        cells = random_grid(rng, 25)
        feats = extract_statistical_features(cells)
        num_white, num_black = feats[0], feats[1]
        assert num_black + num_white == 625


def test_checkerboard_2x2():
    cells = np.array([[1, 0], [0, 1]], np.uint8)
    f = extract_statistical_features(cells)
    assert f[:4] == (2, 2, 1.0, 0.5)
    assert f[7] == 2 and f[8] == 2  # one transition per row/column
    assert f[9] == 1.0  # maximum entropy at p = 1/2
    assert f[10] == 1.0 and f[11] == 1.0  # fully asymmetric


def test_degenerate_grids_rejected():
    with pytest.raises(DegenerateGrid):
        extract_statistical_features(np.zeros((5, 5), np.uint8))
    with pytest.raises(DegenerateGrid):
        extract_statistical_features(np.ones((5, 5), np.uint8))


def test_non_square_rejected():
    with pytest.raises(ValueError):
        extract_statistical_features(np.zeros((3, 4), np.uint8))


# ------------------------------------------------------------- properties

@settings(max_examples=60, deadline=None)
@given(arrays(np.uint8, (13, 13), elements=st.integers(0, 1)))
def test_invariants_hold_on_arbitrary_grids(cells):
    total = cells.size
    black = int(cells.sum())
    if black in (0, total):
        with pytest.raises(DegenerateGrid):
            extract_statistical_features(cells)
        return
    f = extract_statistical_features(cells)
    num_white, num_black, ratio, density = f[:4]
    assert num_black + num_white == total
    assert ratio == num_black / num_white
    assert 0.0 < density < 1.0
    assert 0.0 < f[9] <= 1.0           # entropy
    assert 0.0 <= f[10] <= 1.0         # vertical asymmetry
    assert 0.0 <= f[11] <= 1.0         # horizontal asymmetry
    assert all(0.0 <= q <= 1.0 for q in f[12:17])
    assert 0 <= f[17] <= 11 and 0 <= f[18] <= 11  # peaks < side/2 + 1
    # mirroring the grid swaps left/right quadrants, keeps asymmetries
    g = extract_statistical_features(cells[:, ::-1])
    assert g[11] == f[11]
    assert (g[12], g[13]) == (f[13], f[12])
    assert (g[14], g[15]) == (f[15], f[14])
