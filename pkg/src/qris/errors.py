"""Exception taxonomy shared by every stage of the pipeline.

Each error carries a stable machine-readable ``code`` (snake_case) so that
the CLI and the HTTP service can map failures to structured responses
without string matching on messages.
"""

from __future__ import annotations


class QrisError(Exception):
    """Base class for all domain errors raised by this package."""

    code: str = "error"


# --- encoding ---------------------------------------------------------------

class EmptyPayload(QrisError):
    code = "empty_payload"


class PayloadTooLong(QrisError):
    code = "payload_too_long"


class UnsupportedMode(QrisError):
    code = "unsupported_mode"


# --- imaging ----------------------------------------------------------------

class ImageTooSmall(QrisError):
    code = "image_too_small"


class NoBlackPixel(QrisError):
    code = "no_black_pixel"


class ImplausibleModuleSize(QrisError):
    code = "implausible_module_size"


class InvalidSideCount(QrisError):
    code = "invalid_side_count"


# --- feature extraction -----------------------------------------------------

class FormatUnrecoverable(QrisError):
    code = "format_unrecoverable"


class DegenerateGrid(QrisError):
    code = "degenerate_grid"


# --- dataset ----------------------------------------------------------------

class InsufficientSamples(QrisError):
    code = "insufficient_samples"


class MalformedCsv(QrisError):
    code = "malformed_csv"


class TooFewRows(QrisError):
    code = "too_few_rows"


# --- modelling --------------------------------------------------------------

class SingleClassData(QrisError):
    code = "single_class_data"


class SchemaMismatch(QrisError):
    code = "schema_mismatch"


class ModelFormatError(QrisError):
    code = "model_format_error"
