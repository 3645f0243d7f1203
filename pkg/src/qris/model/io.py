"""The trained-model container and its single-file binary format.

Layout (all integers little-endian):

    offset  size  field
    0       4     magic "QRIS"
    4       1     format version (currently 1)
    5       1     kind (0 = gradient-boosted trees, 1 = random forest)
    6       4     u32 length of the JSON metadata blob
    10      n     metadata: hyperparams, feature names, training seed,
                  schema digest, base score (boosting only)
    ...     4     u32 number of trees
    per tree:
            4     u32 number of nodes n
            4n    i32 split feature index (-1 for leaves)
            8n    f64 split threshold
            4n    i32 left child index
            4n    i32 right child index
            8n    f64 node value (leaf score)

Files with an unknown magic or format version are refused.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

from ..errors import ModelFormatError, SchemaMismatch
from ..features import FEATURE_NAMES, FeatureVector, schema_digest
from . import forest, gbdt
from .tree import FlatTree

MAGIC = b"QRIS"
FORMAT_VERSION = 1
_KIND_CODES = {"gbdt": 0, "rf": 1}
_KIND_NAMES = {code: name for name, code in _KIND_CODES.items()}


@dataclass(frozen=True)
class TreeEnsemble:
    """A trained classifier: list of flat trees plus metadata."""

    kind: str  # "gbdt" | "rf"
    trees: list[FlatTree]
    meta: dict

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Probability of the phishing class for each row."""
        if self.kind == "gbdt":
            return gbdt.predict_proba(self.trees, self.meta["base_score"], X)
        return forest.predict_proba(self.trees, X)

    def predict_vector(self, vector: FeatureVector) -> tuple[str, float]:
        """(label, confidence) for one feature vector; phishing wins ties."""
        if self.meta.get("schema_digest") != schema_digest():
            raise SchemaMismatch("model was trained against a different "
                                 "feature schema")
        p = float(self.predict_proba(vector.as_array()[None, :])[0])
        label = "phishing" if p >= 0.5 else "legitimate"
        return label, max(p, 1.0 - p)


def new_ensemble(kind: str, trees: list[FlatTree], hyperparams: dict,
                 seed: int, base_score: float | None = None) -> TreeEnsemble:
    meta = {
        "hyperparams": hyperparams,
        "feature_names": list(FEATURE_NAMES),
        "seed": seed,
        "schema_digest": schema_digest(),
    }
    if base_score is not None:
        meta["base_score"] = base_score
    return TreeEnsemble(kind=kind, trees=trees, meta=meta)


def dump_model(model: TreeEnsemble) -> bytes:
    meta_blob = json.dumps(model.meta, sort_keys=True,
                           separators=(",", ":")).encode()
    parts = [MAGIC,
             struct.pack("<BB", FORMAT_VERSION, _KIND_CODES[model.kind]),
             struct.pack("<I", len(meta_blob)), meta_blob,
             struct.pack("<I", len(model.trees))]
    for tree in model.trees:
        parts.append(struct.pack("<I", tree.n_nodes))
        parts.append(tree.feature.astype("<i4").tobytes())
        parts.append(tree.threshold.astype("<f8").tobytes())
        parts.append(tree.left.astype("<i4").tobytes())
        parts.append(tree.right.astype("<i4").tobytes())
        parts.append(tree.value.astype("<f8").tobytes())
    return b"".join(parts)


def load_model(data: bytes) -> TreeEnsemble:
    if data[:4] != MAGIC:
        raise ModelFormatError("not a model file (bad magic)")
    version, kind_code = struct.unpack_from("<BB", data, 4)
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {version}")
    if kind_code not in _KIND_NAMES:
        raise ModelFormatError(f"unknown model kind {kind_code}")
    (meta_len,) = struct.unpack_from("<I", data, 6)
    offset = 10
    meta = json.loads(data[offset:offset + meta_len].decode())
    offset += meta_len
    (n_trees,) = struct.unpack_from("<I", data, offset)
    offset += 4
    trees = []
    for _ in range(n_trees):
        (n_nodes,) = struct.unpack_from("<I", data, offset)
        offset += 4

        def take(dtype: str, itemsize: int) -> np.ndarray:
            nonlocal offset
            arr = np.frombuffer(data, dtype=dtype, count=n_nodes,
                                offset=offset)
            offset += itemsize * n_nodes
            return arr.copy()

        trees.append(FlatTree(feature=take("<i4", 4),
                              threshold=take("<f8", 8),
                              left=take("<i4", 4),
                              right=take("<i4", 4),
                              value=take("<f8", 8)))
    return TreeEnsemble(kind=_KIND_NAMES[kind_code], trees=trees, meta=meta)


def save_model(path: str, model: TreeEnsemble) -> None:
    from ..util import atomic_write_bytes
    atomic_write_bytes(path, dump_model(model))


def read_model(path: str) -> TreeEnsemble:
    with open(path, "rb") as fh:
        return load_model(fh.read())
