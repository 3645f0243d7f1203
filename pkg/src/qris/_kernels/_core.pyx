# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Mirrors ``fallback.py`` function-for-function; the test suite asserts
agreement between the two implementations.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, log2


def rs_remainder(cnp.uint8_t[::1] data, cnp.uint8_t[:, ::1] prod):
    """Reed-Solomon polynomial-division remainder (see fallback docstring)."""
    cdef Py_ssize_t degree = prod.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(degree, dtype=np.uint8)
    cdef cnp.uint8_t[::1] res = out
    cdef Py_ssize_t i, j
    cdef int factor
    for i in range(data.shape[0]):
        factor = data[i] ^ res[0]
        for j in range(degree - 1):
            res[j] = res[j + 1] ^ prod[factor, j]
        res[degree - 1] = prod[factor, degree - 1]
    return out


def penalty_score(cnp.uint8_t[:, ::1] grid):
    """Total mask-evaluation penalty of a 0/1 module grid."""
    cdef Py_ssize_t n = grid.shape[0]
    cdef Py_ssize_t x, y
    cdef long result = 0
    cdef int color, run, bits
    cdef long black = 0

    # Same-color runs in rows
    for y in range(n):
        color = grid[y, 0]
        run = 1
        for x in range(1, n):
            if grid[y, x] != color:
                color = grid[y, x]
                run = 1
            else:
                run += 1
                if run == 5:
                    result += 3
                elif run > 5:
                    result += 1
    # Same-color runs in columns
    for x in range(n):
        color = grid[0, x]
        run = 1
        for y in range(1, n):
            if grid[y, x] != color:
                color = grid[y, x]
                run = 1
            else:
                run += 1
                if run == 5:
                    result += 3
                elif run > 5:
                    result += 1

    # 2x2 blocks of a single color
    for y in range(n - 1):
        for x in range(n - 1):
            if (grid[y, x] == grid[y, x + 1]
                    and grid[y, x] == grid[y + 1, x]
                    and grid[y, x] == grid[y + 1, x + 1]):
                result += 3

    # Finder-like 1:1:3:1:1 windows in rows and columns
    for y in range(n):
        bits = 0
        for x in range(n):
            bits = ((bits << 1) & 0x7FF) | grid[y, x]
            if x >= 10 and (bits == 0x05D or bits == 0x5D0):
                result += 40
    for x in range(n):
        bits = 0
        for y in range(n):
            bits = ((bits << 1) & 0x7FF) | grid[y, x]
            if y >= 10 and (bits == 0x05D or bits == 0x5D0):
                result += 40

    # Dark-module proportion
    for y in range(n):
        for x in range(n):
            black += grid[y, x]
    cdef long total = n * n
    cdef long dev = 20 * black - 10 * total
    if dev < 0:
        dev = -dev
    cdef long k = (dev - 1) // total
    if k > 0:
        result += 10 * k
    return int(result)


def block_means(cnp.uint8_t[:, ::1] img, cnp.int64_t[::1] row_bounds,
                cnp.int64_t[::1] col_bounds):
    """Mean luminance of each cell of a rectangular partition."""
    cdef Py_ssize_t nr = row_bounds.shape[0] - 1
    cdef Py_ssize_t nc = col_bounds.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nr, nc))
    cdef cnp.float64_t[:, ::1] mv = out
    cdef Py_ssize_t i, j, r, c
    cdef long s
    cdef double area
    for i in range(nr):
        for j in range(nc):
            s = 0
            for r in range(row_bounds[i], row_bounds[i + 1]):
                for c in range(col_bounds[j], col_bounds[j + 1]):
                    s += img[r, c]
            area = <double>((row_bounds[i + 1] - row_bounds[i])
                            * (col_bounds[j + 1] - col_bounds[j]))
            mv[i, j] = s / area
    return out


def best_split_gh(cnp.float64_t[::1] values, cnp.float64_t[::1] grad,
                  cnp.float64_t[::1] hess, double lam,
                  double min_child_weight):
    """Best gradient/hessian split over a feature sorted ascending."""
    cdef Py_ssize_t n = values.shape[0]
    if n < 2:
        return -INFINITY, 0.0
    cdef double g_total = 0.0, h_total = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        g_total += grad[i]
        h_total += hess[i]
    cdef double parent = g_total * g_total / (h_total + lam)
    cdef double gl = 0.0, hl = 0.0, gr, hr, gain
    cdef double best_gain = -INFINITY, best_thr = 0.0
    for i in range(n - 1):
        gl += grad[i]
        hl += hess[i]
        if values[i + 1] == values[i]:
            continue
        hr = h_total - hl
        if hl < min_child_weight or hr < min_child_weight:
            continue
        gr = g_total - gl
        gain = 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent)
        if gain > best_gain:
            best_gain = gain
            best_thr = (values[i] + values[i + 1]) / 2.0
    return best_gain, best_thr


def best_split_impurity(cnp.float64_t[::1] values, cnp.float64_t[::1] y,
                        long min_leaf, int criterion):
    """Best impurity-reducing split for binary labels sorted by feature."""
    cdef Py_ssize_t n = values.shape[0]
    if n < 2:
        return INFINITY, 0.0
    cdef double total_ones = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        total_ones += y[i]
    cdef double c1l = 0.0, nl, nr, c1r, p1l, p1r, il, ir, cost
    cdef double best_cost = INFINITY, best_thr = 0.0
    for i in range(n - 1):
        c1l += y[i]
        if values[i + 1] == values[i]:
            continue
        nl = <double>(i + 1)
        nr = <double>(n - i - 1)
        if nl < min_leaf or nr < min_leaf:
            continue
        c1r = total_ones - c1l
        p1l = c1l / nl
        p1r = c1r / nr
        if criterion == 0:
            il = 2.0 * p1l * (1.0 - p1l)
            ir = 2.0 * p1r * (1.0 - p1r)
        else:
            il = 0.0
            if p1l > 0:
                il -= p1l * log2(p1l)
            if p1l < 1:
                il -= (1 - p1l) * log2(1 - p1l)
            ir = 0.0
            if p1r > 0:
                ir -= p1r * log2(p1r)
            if p1r < 1:
                ir -= (1 - p1r) * log2(1 - p1r)
        cost = (nl * il + nr * ir) / n
        if cost < best_cost:
            best_cost = cost
            best_thr = (values[i] + values[i + 1]) / 2.0
    return best_cost, best_thr
