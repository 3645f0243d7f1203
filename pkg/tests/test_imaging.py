"""Imaging pipeline tests: render arithmetic, preprocessing robustness,
module-size estimation, and grid binarization."""

import random

import numpy as np
import pytest

from qris.errors import (ImageTooSmall, ImplausibleModuleSize,
                         InvalidSideCount, NoBlackPixel)
from qris.imaging import (BLACK_THRESHOLD, binarize_to_grid, decode_image,
                          estimate_module_size, preprocess, render,
                          save_png)
from qris.qr import encode

from conftest import png_bytes, random_payload


def cells_to_image(cells: np.ndarray, module_px: int,
                   quiet_px: int = 0) -> np.ndarray:
    img = np.where(np.kron(cells, np.ones((module_px, module_px),
                                          np.uint8)), 0, 255)
    return np.pad(img, quiet_px, constant_values=255).astype(np.uint8)


# ---------------------------------------------------------------- render

def test_render_dimensions():
    m = encode("A", ecc_choice="L", force_version=2)  # 25 modules
    img = render(m, 10, quiet_zone_modules=0)
    assert img.shape == (250, 250)
    img = render(encode("A", ecc_choice="L", force_version=1), 1)
    assert img.shape == (29, 29)  # 21 + 2*4 quiet modules


def test_render_values_binary():
    img = render(encode("A", ecc_choice="L"), 5)
    assert set(np.unique(img)) <= {0, 255}
    # quiet zone is white
    assert img[0, 0] == 255


# ------------------------------------------------------------- estimate

def test_estimate_module_size_exact():
    m = encode("A", ecc_choice="L", force_version=1)
    img = render(m, 10, quiet_zone_modules=0)
    assert estimate_module_size(img) == 10
    assert img.shape == (210, 210)


def test_estimate_rejects_blank():
    with pytest.raises(NoBlackPixel):
        estimate_module_size(np.full((50, 50), 255, np.uint8))


def test_estimate_rejects_solid_black():
    with pytest.raises(ImplausibleModuleSize):
        binarize_to_grid(np.zeros((50, 50), np.uint8))


# ------------------------------------------------------------- binarize

def test_binarize_crops_quiet_zone():
    m = encode("HELLO WORLD", ecc_choice="Q", force_version=1)
    img = render(m, 7)  # default 4-module quiet zone
    grid = binarize_to_grid(img)
    assert grid.side == 21
    assert np.array_equal(grid.cells, m.grid)
    assert grid.module_size_px == pytest.approx(7.0)


@pytest.mark.parametrize("module_px", [1, 2, 3, 5, 11, 16])
def test_binarize_exact_at_any_module_size(module_px):
    m = encode("https://example.com/size", rng_seed=1)
    img = render(m, module_px)
    assert np.array_equal(binarize_to_grid(img).cells, m.grid)


def test_binarize_rejects_non_symbol_side():
    side = 24  # not 17 + 4v
    cells = ((np.arange(side)[:, None] + np.arange(side)) % 2).astype(
        np.uint8)
    finder = np.ones((7, 7), np.uint8)
    finder[1:6, 1:6] = 0
    finder[2:5, 2:5] = 1
    cells[:7, :7] = finder
    with pytest.raises(InvalidSideCount):
        binarize_to_grid(cells_to_image(cells, 8))


def test_binarize_rejects_oversized_side():
    # valid 17+4v arithmetic but beyond version 40
    side = 181
    cells = np.zeros((side, side), np.uint8)
    finder = np.ones((7, 7), np.uint8)
    finder[1:6, 1:6] = 0
    finder[2:5, 2:5] = 1
    cells[:7, :7] = finder
    cells[0, -1] = 1
    cells[-1, 0] = 1
    with pytest.raises(InvalidSideCount):
        binarize_to_grid(cells_to_image(cells, 2))


# ------------------------------------------------------------ preprocess

def test_preprocess_rejects_tiny_images():
    with pytest.raises(ImageTooSmall):
        preprocess(np.full((10, 10), 255, np.uint8))


def test_preprocess_output_binary():
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, (120, 120), dtype=np.uint8)
    out = preprocess(img)
    assert set(np.unique(out)) <= {0, 255}


def test_preprocess_uniform_gray_below_threshold_goes_black():
    out = preprocess(np.full((64, 64), 128, np.uint8))
    assert (out == 0).all()


def test_preprocess_preserves_grid_on_clean_renders():
    rng = random.Random(5)
    for i in range(25):
        m = encode(random_payload(rng), rng_seed=i)
        img = render(m, rng.randint(4, 16))
        grid = binarize_to_grid(preprocess(img))
        assert np.array_equal(grid.cells, m.grid)


def test_preprocess_recovers_under_sensor_noise():
    rng = random.Random(11)
    noise_rng = np.random.default_rng(11)
    for i in range(25):
        m = encode(random_payload(rng), rng_seed=i)
        img = render(m, rng.randint(4, 16)).astype(np.int16)
        noisy = np.clip(img + np.round(noise_rng.normal(0, 8, img.shape)),
                        0, 255).astype(np.uint8)
        grid = binarize_to_grid(preprocess(noisy))
        assert np.array_equal(grid.cells, m.grid)


# ----------------------------------------------------------------- I/O

def test_png_roundtrip(tmp_path):
    m = encode("ROUND TRIP", ecc_choice="M")
    img = render(m, 6)
    path = tmp_path / "qr.png"
    save_png(str(path), img)
    decoded = decode_image(path.read_bytes())
    assert np.array_equal(decoded, img)


def test_decode_image_rgb_luma():
    rgb = np.zeros((30, 40, 3), np.uint8)
    rgb[..., 1] = 255  # pure green
    data = png_bytes(rgb[..., ::-1])  # png_bytes expects nothing specific
    # luminance of pure green = round(0.587 * 255) = 150
    from qris.imaging import luminance
    assert luminance(rgb)[0, 0] == 150


def test_decode_image_rejects_garbage():
    with pytest.raises(ValueError):
        decode_image(b"definitely not a png")


def test_threshold_constant():
    assert BLACK_THRESHOLD == 189
