"""Small shared helpers: atomic file writes and logging setup."""

from __future__ import annotations

import logging
import os
import sys
import tempfile


def atomic_write_bytes(path: str, data: bytes) -> None:
    """Write via a sibling temp file + rename so rerun outputs are
    replaced atomically and never observed half-written."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: str, text: str) -> None:
    atomic_write_bytes(path, text.encode())


def setup_logging() -> logging.Logger:
    """Logger writing human-readable progress to stderr; level from the
    QRIS_LOG environment variable (error, info, or debug)."""
    level_name = os.environ.get("QRIS_LOG", "info").lower()
    level = {"error": logging.ERROR, "info": logging.INFO,
             "debug": logging.DEBUG}.get(level_name, logging.INFO)
    logger = logging.getLogger("qris")
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(level)
    return logger
