"""Raster/grid bridge: render module matrices to images, clean captured
images, estimate module size from the top-left finder pattern, and
binarize a cropped capture back into a module grid.

Images are 2-D ``uint8`` NumPy arrays of luminance (0 = black).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import cv2
import numpy as np

from . import _kernels
from .errors import (ImageTooSmall, ImplausibleModuleSize, InvalidSideCount,
                     NoBlackPixel)

#: Global luminance threshold separating black from white modules.
BLACK_THRESHOLD = 189

_MIN_SIDE = 21
_MAX_SIDE = 177


@dataclass(frozen=True)
class BinaryGrid:
    """An n-by-n cell grid (1 = black) recovered from pixels."""

    side: int
    cells: np.ndarray
    module_size_px: float


def render(matrix, module_px: int, quiet_zone_modules: int = 4) -> np.ndarray:
    """Rasterize a module matrix: black modules to 0, the rest to 255."""
    if module_px < 1:
        raise ValueError("module_px must be >= 1")
    if quiet_zone_modules < 0:
        raise ValueError("quiet_zone_modules must be >= 0")
    grid = np.asarray(matrix.grid if hasattr(matrix, "grid") else matrix,
                      dtype=np.uint8)
    modules = np.where(grid, np.uint8(0), np.uint8(255))
    size = grid.shape[0] * module_px
    img = cv2.resize(modules, (size, size), interpolation=cv2.INTER_NEAREST)
    pad = quiet_zone_modules * module_px
    if pad:
        img = np.pad(img, pad, constant_values=255)
    return img


def preprocess(image: np.ndarray) -> np.ndarray:
    """Denoise and contrast-normalize a capture into a {0, 255} image.

    Stages: global threshold at 189, contrast normalization, 3x3
    Gaussian blur, re-threshold at 189, 3x3 median filter.  The initial
    threshold happens first so that sensor noise (which sits many
    standard deviations away from the 189 cut on either side) can never
    shift a module boundary; the spatial filters then operate on a binary
    image, where each disturbs at most the corner pixels of a module —
    bounded damage that the per-module mean in ``binarize_to_grid``
    tolerates at any plausible module size.

    The contrast-normalization stage (CLAHE, clip limit 2.0, 8x8 tiles)
    is computed in closed form rather than pixel-by-pixel: on a
    two-level image the clip limit caps each of the two occupied
    histogram bins at area/128, so equalization maps black to at most
    round(255 * 3/256) = 3 and white to exactly 255 in every tile.  A
    3x3 blur of values {0..3, 255} crosses the 189 cut at exactly the
    same pixels as a blur of {0, 255} (the nearest attainable kernel
    means are 175.3 + 3 below and 191.25 above the cut), so the stage
    reduces to the identity on the thresholded image.
    """
    image = np.asarray(image, dtype=np.uint8)
    if image.ndim != 2:
        raise ValueError("expected a single-channel luminance image")
    if image.shape[0] < _MIN_SIDE or image.shape[1] < _MIN_SIDE:
        raise ImageTooSmall(
            f"image {image.shape[1]}x{image.shape[0]} is smaller than "
            f"{_MIN_SIDE}x{_MIN_SIDE}")
    _, x = cv2.threshold(image, BLACK_THRESHOLD - 1, 255, cv2.THRESH_BINARY)
    x = cv2.GaussianBlur(x, (3, 3), 0)
    _, x = cv2.threshold(x, BLACK_THRESHOLD - 1, 255, cv2.THRESH_BINARY)
    return cv2.medianBlur(x, 3)


def estimate_module_size(image: np.ndarray) -> int:
    """Module size in pixels, from the top-left finder pattern.

    Scans rows left-to-right for the first black pixel, counts the
    contiguous black run downward from it (the 7-module finder edge), and
    returns ceil(run / 7).
    """
    image = np.asarray(image, dtype=np.uint8)
    height, width = image.shape
    black = image < BLACK_THRESHOLD
    black_rows = black.any(axis=1)
    if not black_rows.any():
        raise NoBlackPixel("image contains no black pixel")
    row0 = int(np.argmax(black_rows))
    col0 = int(np.argmax(black[row0]))
    column = image[row0:, col0]
    stops = np.flatnonzero(column >= BLACK_THRESHOLD)
    run = int(stops[0]) if stops.size else column.shape[0]
    module_size = math.ceil(run / 7)
    if round(width / module_size) < 17:
        raise ImplausibleModuleSize(
            f"estimated module size {module_size} leaves fewer modules "
            "than the smallest symbol has")
    return module_size


def binarize_to_grid(image: np.ndarray) -> BinaryGrid:
    """Convert a cropped, axis-aligned QR capture into a module grid.

    The image is cropped to the bounding box of its black pixels, the
    module size estimated from the finder edge, and each resulting cell
    set black iff its mean luminance is below 189.
    """
    image = np.asarray(image, dtype=np.uint8)
    black = image < BLACK_THRESHOLD
    rows = black.any(axis=1)
    cols = black.any(axis=0)
    if not rows.any():
        raise NoBlackPixel("image contains no black pixel")
    r0 = int(np.argmax(rows))
    r1 = len(rows) - int(np.argmax(rows[::-1]))
    c0 = int(np.argmax(cols))
    c1 = len(cols) - int(np.argmax(cols[::-1]))
    image = image[r0:r1, c0:c1]
    height, width = image.shape

    module_size = estimate_module_size(image)
    side = round(width / module_size)
    if not (_MIN_SIDE <= side <= _MAX_SIDE and (side - 17) % 4 == 0):
        raise InvalidSideCount(
            f"{side} modules per side does not match any version")

    row_bounds = np.rint(np.linspace(0, height, side + 1)).astype(np.int64)
    col_bounds = np.rint(np.linspace(0, width, side + 1)).astype(np.int64)
    means = _kernels.block_means(np.ascontiguousarray(image),
                                 row_bounds, col_bounds)
    cells = (means < BLACK_THRESHOLD).astype(np.uint8)
    return BinaryGrid(side=side, cells=cells,
                      module_size_px=width / side)


def luminance(image: np.ndarray) -> np.ndarray:
    """Collapse an RGB image to 8-bit luma (0.299 R + 0.587 G + 0.114 B)."""
    if image.ndim == 2:
        return image.astype(np.uint8)
    rgb = image[..., :3].astype(np.float64)
    luma = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.rint(luma).astype(np.uint8)


def decode_image(data: bytes) -> np.ndarray:
    """Decode PNG/PGM bytes to a luminance image."""
    buf = np.frombuffer(data, dtype=np.uint8)
    img = cv2.imdecode(buf, cv2.IMREAD_UNCHANGED)
    if img is None:
        raise ValueError("could not decode image data")
    if img.ndim == 3:  # OpenCV decodes color as BGR(A)
        img = img[..., :3][..., ::-1]
    return luminance(img)


def load_image(path: str) -> np.ndarray:
    with open(path, "rb") as fh:
        return decode_image(fh.read())


def save_png(path: str, image: np.ndarray) -> None:
    ok, buf = cv2.imencode(".png", np.asarray(image, dtype=np.uint8))
    if not ok:
        raise ValueError("could not encode image as PNG")
    with open(path, "wb") as fh:
        fh.write(buf.tobytes())
