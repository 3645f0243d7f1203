"""Shared test helpers: synthetic corpora, rendered samples, models."""

from __future__ import annotations

import csv
import random

import cv2
import numpy as np
import pytest

from qris.imaging import render
from qris.qr import encode

WORDS = ("login", "secure", "account", "verify", "update", "bank", "pay",
         "mail", "cloud", "shop", "news", "photo", "files", "support",
         "portal", "billing", "wallet", "bonus", "prize", "confirm")
TLDS = ("com", "net", "org", "info", "io", "xyz", "top", "site")


def synthetic_url(rng: random.Random, label: int) -> str:
    """A URL whose shape statistically differs by label.

    Legitimate URLs are short, HTTPS, and shallow; phishing URLs imitate
    real-world lures: long multi-token hosts, deep paths, and tracking
    query strings.  Only length/structure differ — the classifier never
    sees the text, just the QR symbol it produces.

    The distributions overlap (some legitimate URLs are long, some
    phishing URLs are short) so a classifier cannot reach 100% and the
    learning curve has room to improve with more data.
    """
    if label == 0:
        host = f"{rng.choice(WORDS)}{rng.randrange(100)}.{rng.choice(TLDS)}"
        path = "/".join(rng.choice(WORDS)
                        for _ in range(rng.choice((0, 0, 1, 1, 2, 3))))
        query = f"?page={rng.randrange(100)}" if rng.random() < 0.25 else ""
        return f"https://{host}/{path}{query}"
    n_host = rng.choice((1, 1, 2, 2, 2, 3, 4))
    host = "-".join(rng.choice(WORDS) for _ in range(n_host))
    host = f"{host}{rng.randrange(10_000)}.{rng.choice(TLDS)}"
    path = "/".join(rng.choice(WORDS)
                    for _ in range(rng.choice((0, 1, 1, 2, 3, 4, 5))))
    query = (f"?session={rng.randrange(10 ** 8)}"
             if rng.random() < 0.6 else "")
    scheme = "http" if rng.random() < 0.7 else "https"
    return f"{scheme}://{host}/{path}{query}"


def write_url_corpus(path, n_per_label: int, seed: int = 7) -> None:
    rng = random.Random(seed)
    rows = [(synthetic_url(rng, label), "legit" if label == 0 else "phish")
            for label in (0, 1) for _ in range(n_per_label)]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["url", "label"])
        writer.writerows(rows)


def random_payload(rng: random.Random, max_len: int = 60) -> str:
    body = "".join(rng.choice("abcdefghij0123456789/-._~")
                   for _ in range(rng.randint(1, max_len)))
    return f"https://{body}.example/{body[: rng.randint(0, len(body))]}"


def png_bytes(image: np.ndarray) -> bytes:
    ok, buf = cv2.imencode(".png", np.asarray(image, dtype=np.uint8))
    assert ok
    return buf.tobytes()


def qr_png(payload: str, module_px: int = 8, rng_seed: int = 0,
           **encode_kwargs) -> bytes:
    return png_bytes(render(encode(payload, rng_seed=rng_seed,
                                   **encode_kwargs), module_px))


def separable_features(n_per_class: int, seed: int = 0,
                       shuffle_labels: bool = False):
    """Two well-separated 24-feature clusters (plus noise columns)."""
    rng = np.random.default_rng(seed)
    n = 2 * n_per_class
    X = rng.normal(0.0, 1.0, (n, 24))
    y = np.repeat([0.0, 1.0], n_per_class)
    X[n_per_class:, :6] += 4.0
    if shuffle_labels:
        y = rng.permutation(y)
    order = rng.permutation(n)
    return X[order], y[order]


@pytest.fixture(scope="session")
def small_model(tmp_path_factory):
    """A trained model persisted to disk, shared across tests."""
    from qris.model import save_model, train
    X, y = separable_features(60, seed=3)
    model = train("gbdt", X, y, seed=42)
    path = tmp_path_factory.mktemp("model") / "model.qris"
    save_model(str(path), model)
    return str(path)
