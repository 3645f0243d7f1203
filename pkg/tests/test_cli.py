"""Command-line interface tests, run in-process through ``qris.cli.run``
with captured stdout."""

import json

import numpy as np
import pytest

from qris.cli import run
from qris.imaging import save_png, render
from qris.qr import encode

from conftest import write_url_corpus


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


@pytest.fixture()
def pipeline_files(tmp_path):
    corpus = tmp_path / "urls.csv"
    write_url_corpus(corpus, 80, seed=1)
    return tmp_path, str(corpus)


def test_full_pipeline(pipeline_files, capsys):
    tmp, corpus = pipeline_files
    feats = str(tmp / "f.csv")
    code, summary = invoke(capsys, "gen-dataset", corpus, "--out", feats,
                           "--manifest", str(tmp / "m.json"),
                           "--per-label", "60", "--seed", "3")
    assert code == 0
    assert summary["rows"] == 120

    outs = [str(tmp / f"{n}.csv") for n in ("tr", "va", "te")]
    code, summary = invoke(capsys, "split", feats, "--train", outs[0],
                           "--validation", outs[1], "--test", outs[2])
    assert code == 0
    assert summary["counts"] == {"train": 84, "validation": 18,
                                 "test": 18}

    model = str(tmp / "model.qris")
    code, summary = invoke(capsys, "train", outs[0], "--kind", "gbdt",
                           "--out", model, "--seed", "3")
    assert code == 0
    assert summary["train_accuracy"] >= 90.0

    code, summary = invoke(capsys, "eval", outs[2], "--model", model)
    assert code == 0
    assert {"accuracy", "precision", "recall", "f1", "auc"} <= \
        set(summary)

    img = str(tmp / "q.png")
    save_png(img, render(encode("https://sample.example/ok",
                                rng_seed=5), 8))
    code, summary = invoke(capsys, "extract", img)
    assert code == 0
    assert len(summary["features"]) == 24

    code, summary = invoke(capsys, "predict", img, "--model", model)
    assert code == 0
    assert summary["label"] in ("legitimate", "phishing")
    assert 0.5 <= summary["confidence"] <= 1.0


def test_gen_dataset_determinism(pipeline_files, capsys):
    tmp, corpus = pipeline_files
    for run_id in (1, 2):
        code, _ = invoke(capsys, "gen-dataset", corpus,
                         "--out", str(tmp / f"f{run_id}.csv"),
                         "--manifest", str(tmp / f"m{run_id}.json"),
                         "--per-label", "40", "--seed", "7")
        assert code == 0
    assert (tmp / "f1.csv").read_bytes() == (tmp / "f2.csv").read_bytes()
    assert (tmp / "m1.json").read_bytes() == (tmp / "m2.json").read_bytes()


def test_train_determinism(pipeline_files, capsys):
    tmp, corpus = pipeline_files
    feats = str(tmp / "f.csv")
    invoke(capsys, "gen-dataset", corpus, "--out", feats,
           "--per-label", "40", "--seed", "1")
    for run_id in (1, 2):
        code, _ = invoke(capsys, "train", feats, "--out",
                         str(tmp / f"m{run_id}.qris"), "--seed", "9")
        assert code == 0
    assert (tmp / "m1.qris").read_bytes() == (tmp / "m2.qris").read_bytes()


def test_tune_writes_params_and_model(pipeline_files, capsys):
    tmp, corpus = pipeline_files
    feats = str(tmp / "f.csv")
    invoke(capsys, "gen-dataset", corpus, "--out", feats,
           "--per-label", "30", "--seed", "1")
    code, summary = invoke(capsys, "tune", feats, "--kind", "gbdt",
                           "--trials", "2", "--seed", "4",
                           "--out", str(tmp / "best.json"),
                           "--model-out", str(tmp / "best.qris"))
    assert code == 0
    assert summary["trials_completed"] == 2
    best = json.loads((tmp / "best.json").read_text())
    assert summary["best_params"] == best
    assert (tmp / "best.qris").read_bytes()[:4] == b"QRIS"


def test_runtime_error_exit_code(tmp_path, capsys):
    code = run(["predict", str(tmp_path / "missing.png"),
                "--model", str(tmp_path / "missing.qris")])
    assert code == 1
    assert capsys.readouterr().out == ""


def test_error_on_blank_image(tmp_path, small_model, capsys):
    img = str(tmp_path / "white.png")
    save_png(img, np.full((60, 60), 255, np.uint8))
    code = run(["predict", img, "--model", small_model])
    assert code == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        run(["not-a-command"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run(["split", "x.csv", "--train", "a", "--validation", "b",
             "--test", "c", "--fractions", "0.5,0.5"])
    assert err.value.code == 2


def test_console_script_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "qris.cli", "--help"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    for name in ("gen-dataset", "split", "train", "tune", "eval",
                 "extract", "predict", "serve"):
        assert name in out.stdout
