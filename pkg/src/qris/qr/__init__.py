"""QR symbol synthesis: constant tables, GF(256) arithmetic, and the
module-matrix encoder."""

from .encoder import EncodingParams, QrMatrix, capacity, encode, select_mode

__all__ = ["EncodingParams", "QrMatrix", "capacity", "encode", "select_mode"]
