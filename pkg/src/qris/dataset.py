"""Labeled feature-dataset synthesis from URL corpora.

Reads a ``url,label`` CSV, encodes each usable URL into a QR symbol
(with a seeded dynamic ECC choice), extracts the 24 structural features,
and emits a balanced feature CSV plus a JSON manifest documenting what
was accepted, skipped, and how parameters were distributed.  Everything
is deterministic given (input bytes, target, seed).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import random
from collections import Counter

from .errors import InsufficientSamples, MalformedCsv, QrisError, TooFewRows
from .features import CSV_COLUMNS, extract_all
from .qr import encode
from .util import atomic_write_text

_LABEL_VALUES = {
    "legit": 0, "legitimate": 0, "0": 0,
    "phish": 1, "phishing": 1, "1": 1,
}


def parse_url_csv(path: str) -> list[tuple[str, int]]:
    """(url, label) pairs from a CSV whose header contains ``url`` and
    ``label`` columns (extra columns ignored, case-insensitive header)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise MalformedCsv("input CSV is empty")
        lookup = {name.strip().lower(): name for name in reader.fieldnames}
        if "url" not in lookup or "label" not in lookup:
            raise MalformedCsv(
                "input CSV must have 'url' and 'label' columns; found "
                f"{reader.fieldnames}")
        records = []
        for line, row in enumerate(reader, start=2):
            url = (row[lookup["url"]] or "").strip()
            raw_label = (row[lookup["label"]] or "").strip().lower()
            if not url:
                raise MalformedCsv(f"line {line}: empty url")
            if raw_label not in _LABEL_VALUES:
                raise MalformedCsv(f"line {line}: unknown label {raw_label!r}")
            records.append((url, _LABEL_VALUES[raw_label]))
    return records


def _format_row(values) -> list[str]:
    return [str(v) for v in values]


def build_dataset(input_path: str, target_per_label: int, seed: int,
                  output_path: str, manifest_path: str | None = None) -> dict:
    """Build the balanced feature CSV; returns the manifest dict."""
    records = parse_url_csv(input_path)
    with open(input_path, "rb") as fh:
        source_digest = hashlib.sha256(fh.read()).hexdigest()

    # Deduplicate exact URLs (first occurrence wins) so no URL can appear
    # on both sides of a later train/test split.
    seen: set[str] = set()
    pools: dict[int, list[str]] = {0: [], 1: []}
    for url, label in records:
        if url in seen:
            continue
        seen.add(url)
        pools[label].append(url)

    rng = random.Random(seed)
    rows: list[list[str]] = []
    accepted = Counter()
    skipped = Counter()
    version_histogram: Counter = Counter()
    ecc_histogram: Counter = Counter()
    for label in (0, 1):
        pool = pools[label]
        rng.shuffle(pool)
        for url in pool:
            if accepted[label] >= target_per_label:
                break
            try:
                matrix = encode(url, rng_seed=rng.randrange(2 ** 32))
                vector = extract_all(matrix.grid)
            except QrisError:
                skipped[label] += 1
                continue
            version_histogram[matrix.params.version] += 1
            ecc_histogram[matrix.params.ecc_level] += 1
            rows.append(_format_row(
                list(vector.as_dict().values()) + [label]))
            accepted[label] += 1
        if accepted[label] < target_per_label:
            raise InsufficientSamples(
                f"label {label}: only {accepted[label]} of "
                f"{target_per_label} requested rows could be generated")

    rng.shuffle(rows)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    atomic_write_text(output_path, buffer.getvalue())

    manifest = {
        "seed": seed,
        "target_per_label": target_per_label,
        "accepted": {"legit": accepted[0], "phish": accepted[1]},
        "skipped": {"legit": skipped[0], "phish": skipped[1]},
        "version_histogram": {str(k): v for k, v
                              in sorted(version_histogram.items())},
        "ecc_histogram": dict(sorted(ecc_histogram.items())),
        "source_digest": source_digest,
        "rows": len(rows),
    }
    if manifest_path:
        atomic_write_text(manifest_path,
                          json.dumps(manifest, indent=2, sort_keys=True)
                          + "\n")
    return manifest


def read_feature_csv(path: str) -> tuple[list[list[str]], list[int]]:
    """Raw feature rows (as strings, schema-checked) and their labels."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != list(CSV_COLUMNS):
            raise MalformedCsv(
                "feature CSV header does not match the canonical schema")
        rows = []
        labels = []
        for row in reader:
            if len(row) != len(CSV_COLUMNS):
                raise MalformedCsv(f"row with {len(row)} columns")
            rows.append(row[:-1])
            labels.append(int(row[-1]))
    return rows, labels


def load_feature_matrix(path: str):
    """Feature CSV as (X float64 matrix, y int array)."""
    import numpy as np

    rows, labels = read_feature_csv(path)
    X = np.array([[float(v) for v in row] for row in rows])
    if X.size and not np.isfinite(X).all():
        raise MalformedCsv("feature CSV contains non-finite values")
    return X, np.array(labels, dtype=np.int64)


def _allocate(n: int, fractions: tuple[float, float, float]) -> list[int]:
    """Largest-remainder allocation of n rows to the three splits."""
    raw = [n * f for f in fractions]
    counts = [math.floor(r) for r in raw]
    remainder = n - sum(counts)
    order = sorted(range(3), key=lambda i: (counts[i] - raw[i], i))
    for i in range(remainder):
        counts[order[i]] += 1
    return counts


def stratified_split(input_path: str,
                     fractions: tuple[float, float, float], seed: int,
                     output_paths: tuple[str, str, str]) -> dict:
    """Split a feature CSV into train/validation/test preserving
    per-label proportions; deterministic per seed."""
    if any(f <= 0 for f in fractions):
        raise ValueError("all split fractions must be positive")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError("split fractions must sum to 1")
    rows, labels = read_feature_csv(input_path)

    rng = random.Random(seed)
    split_rows: list[list[list[str]]] = [[], [], []]
    for label in sorted(set(labels)):
        idx = [i for i, l in enumerate(labels) if l == label]
        rng.shuffle(idx)
        counts = _allocate(len(idx), fractions)
        if any(c < 1 for c in counts):
            raise TooFewRows(
                f"label {label} has too few rows ({len(idx)}) for a "
                f"{fractions} split")
        start = 0
        for part, count in enumerate(counts):
            for i in idx[start:start + count]:
                split_rows[part].append(rows[i] + [str(labels[i])])
            start += count

    result = {}
    for name, path, part in zip(("train", "validation", "test"),
                                output_paths, split_rows):
        rng.shuffle(part)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(part)
        atomic_write_text(path, buffer.getvalue())
        result[name] = len(part)
    return result
