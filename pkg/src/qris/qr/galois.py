"""GF(256) arithmetic for Reed-Solomon error correction.

The field is GF(2^8) with reducing polynomial 0x11D and generator element
0x02, as used by the QR symbology.  Exposes log/antilog tables plus the
cached RS generator polynomials; the actual polynomial division runs in
the kernels layer (compiled extension or NumPy fallback).
"""

from __future__ import annotations

import functools

import numpy as np


def _build_tables() -> tuple[np.ndarray, np.ndarray]:
    exp = np.zeros(510, dtype=np.uint8)
    log = np.zeros(256, dtype=np.int32)
    x = 1
    for i in range(255):
        exp[i] = x
        exp[i + 255] = x
        log[x] = i
        x <<= 1
        if x & 0x100:
            x ^= 0x11D
    return exp, log


#: EXP[i] = 2**i in the field, doubled in length so products need no modulo.
EXP, LOG = _build_tables()


def gf_mul(a: int, b: int) -> int:
    """Field product of two bytes."""
    if a == 0 or b == 0:
        return 0
    return int(EXP[LOG[a] + LOG[b]])


@functools.lru_cache(maxsize=None)
def generator_poly(degree: int) -> bytes:
    """Monic RS generator polynomial of the given degree.

    Returned as the ``degree`` coefficients after the leading 1, in order
    of descending powers: prod_{i=0}^{degree-1} (x - 2**i).
    """
    if not 1 <= degree <= 255:
        raise ValueError("degree out of range")
    coeffs = [0] * (degree - 1) + [1]
    root = 1
    for _ in range(degree):
        for j in range(degree):
            coeffs[j] = gf_mul(coeffs[j], root)
            if j + 1 < degree:
                coeffs[j] ^= coeffs[j + 1]
        root = gf_mul(root, 0x02)
    return bytes(coeffs)


@functools.lru_cache(maxsize=None)
def _factor_products(degree: int) -> np.ndarray:
    """Table [factor, j] = factor * generator_poly(degree)[j] in the field."""
    gen = np.frombuffer(generator_poly(degree), dtype=np.uint8)
    table = np.zeros((256, degree), dtype=np.uint8)
    nz = gen != 0
    gen_logs = LOG[gen[nz]]
    factors = np.arange(1, 256)
    table[1:, nz] = EXP[LOG[factors][:, None] + gen_logs[None, :]]
    return table
