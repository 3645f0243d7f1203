"""Pure NumPy implementations of the hot kernels.

Used whenever the compiled extension is unavailable (or when the
``QRIS_PURE`` environment variable is set).  Every function here must be
numerically interchangeable with its compiled counterpart; the test suite
asserts exact agreement.
"""

from __future__ import annotations

import numpy as np

#: Window weights for detecting the 1:1:3:1:1 finder-like run patterns.
_N3_WEIGHTS = (1 << np.arange(10, -1, -1)).astype(np.int32)
_N3_A = 0x05D  # 00001011101
_N3_B = 0x5D0  # 10111010000


def rs_remainder(data: np.ndarray, prod: np.ndarray) -> np.ndarray:
    """Reed-Solomon polynomial-division remainder.

    ``prod[f, j]`` must hold the field product of byte ``f`` with the j-th
    generator-polynomial coefficient (see ``qr.galois._factor_products``).
    """
    degree = prod.shape[1]
    result = np.zeros(degree, dtype=np.uint8)
    for b in data:
        factor = int(b) ^ int(result[0])
        result[:-1] = result[1:]
        result[-1] = 0
        result ^= prod[factor]
    return result


def _run_penalty(grid: np.ndarray) -> int:
    """Same-color run penalty along rows (transpose for columns)."""
    n, m = grid.shape
    sentinel = np.full((n, 1), 2, dtype=np.int16)
    flat = np.concatenate([grid.astype(np.int16), sentinel], axis=1).ravel()
    change = np.flatnonzero(np.diff(flat) != 0)
    starts = np.concatenate([[0], change + 1])
    ends = np.concatenate([change + 1, [flat.size]])
    runs = (ends - starts)[flat[starts] != 2]
    long_runs = runs[runs >= 5]
    return int(3 * long_runs.size + np.sum(long_runs - 5))


def _finder_like_penalty(grid: np.ndarray) -> int:
    """Penalty for 11-module windows resembling a finder pattern."""
    if grid.shape[1] < 11:
        return 0
    windows = np.lib.stride_tricks.sliding_window_view(
        grid.astype(np.int32), 11, axis=1)
    packed = windows @ _N3_WEIGHTS
    return int(40 * np.count_nonzero((packed == _N3_A) | (packed == _N3_B)))


def penalty_score(grid: np.ndarray) -> int:
    """Total mask-evaluation penalty of a 0/1 module grid."""
    result = _run_penalty(grid) + _run_penalty(grid.T)

    a = grid[:-1, :-1]
    same = (a == grid[1:, :-1]) & (a == grid[:-1, 1:]) & (a == grid[1:, 1:])
    result += 3 * int(np.count_nonzero(same))

    result += _finder_like_penalty(grid) + _finder_like_penalty(grid.T)

    black = int(np.count_nonzero(grid))
    total = grid.size
    k = max(0, (abs(20 * black - 10 * total) - 1) // total)
    return result + 10 * k


def block_means(img: np.ndarray, row_bounds: np.ndarray,
                col_bounds: np.ndarray) -> np.ndarray:
    """Mean luminance of each cell in the rectangular partition given by
    the (inclusive-start) row/column boundary arrays."""
    sums = np.add.reduceat(
        np.add.reduceat(img.astype(np.uint32), row_bounds[:-1], axis=0),
        col_bounds[:-1], axis=1).astype(np.float64)
    areas = np.outer(np.diff(row_bounds), np.diff(col_bounds)).astype(np.float64)
    return sums / areas


def best_split_gh(values: np.ndarray, grad: np.ndarray, hess: np.ndarray,
                  lam: float, min_child_weight: float) -> tuple[float, float]:
    """Best gradient/hessian split over a feature sorted ascending.

    Returns (gain, threshold); gain is -inf when no admissible split
    exists.  Gain is the structure-score improvement
    0.5 * (GL^2/(HL+lam) + GR^2/(HR+lam) - G^2/(H+lam)).
    """
    n = values.shape[0]
    if n < 2:
        return float("-inf"), 0.0
    gcum = np.cumsum(grad)
    hcum = np.cumsum(hess)
    g_total = gcum[-1]
    h_total = hcum[-1]
    gl = gcum[:-1]
    hl = hcum[:-1]
    hr = h_total - hl
    valid = (values[1:] != values[:-1]) & (hl >= min_child_weight) \
        & (hr >= min_child_weight)
    if not valid.any():
        return float("-inf"), 0.0
    gr = g_total - gl
    parent = g_total * g_total / (h_total + lam)
    gain = 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent)
    gain[~valid] = float("-inf")
    i = int(np.argmax(gain))
    return float(gain[i]), float((values[i] + values[i + 1]) / 2.0)


def best_split_impurity(values: np.ndarray, y: np.ndarray, min_leaf: int,
                        criterion: int) -> tuple[float, float]:
    """Best impurity-reducing split for binary labels sorted by feature.

    ``criterion``: 0 = Gini, 1 = entropy.  Returns (weighted child
    impurity, threshold); impurity is +inf when no admissible split exists.
    """
    n = values.shape[0]
    if n < 2:
        return float("inf"), 0.0
    ones = np.cumsum(y)
    total_ones = ones[-1]
    nl = np.arange(1, n, dtype=np.float64)
    nr = n - nl
    c1l = ones[:-1]
    c1r = total_ones - c1l
    valid = (values[1:] != values[:-1]) & (nl >= min_leaf) & (nr >= min_leaf)
    if not valid.any():
        return float("inf"), 0.0
    p1l = c1l / nl
    p1r = c1r / nr
    if criterion == 0:
        il = 2.0 * p1l * (1.0 - p1l)
        ir = 2.0 * p1r * (1.0 - p1r)
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            il = -np.where(p1l > 0, p1l * np.log2(p1l), 0.0) \
                - np.where(p1l < 1, (1 - p1l) * np.log2(1 - p1l), 0.0)
            ir = -np.where(p1r > 0, p1r * np.log2(p1r), 0.0) \
                - np.where(p1r < 1, (1 - p1r) * np.log2(1 - p1r), 0.0)
    cost = (nl * il + nr * ir) / n
    cost[~valid] = float("inf")
    i = int(np.argmin(cost))
    return float(cost[i]), float((values[i] + values[i + 1]) / 2.0)
